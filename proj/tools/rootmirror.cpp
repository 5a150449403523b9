#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rootmirror/commands.hpp"
#include "rootmirror/config.hpp"
#include "rootmirror/error.hpp"
#include "rootmirror/report.hpp"

namespace {

using rootmirror::ErrorKind;
using rootmirror::fail;

long parse_long(const std::string& text, const std::string& flag) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) fail(ErrorKind::Config, flag + ": \"" + text + "\" is not an integer");
  return v;
}

std::vector<long> parse_list(const std::string& text, const std::string& flag) {
  std::vector<long> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_long(item, flag));
  return out;
}

// "N" or "A..B".
std::vector<long> parse_r(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) return {parse_long(text, "--r")};
  const long a = parse_long(text.substr(0, dots), "--r");
  const long b = parse_long(text.substr(dots + 2), "--r");
  if (a > b) fail(ErrorKind::Config, "--r: empty range " + text);
  std::vector<long> out;
  for (long r = a; r <= b; ++r) out.push_back(r);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rootmirror: exact genus-zero I-functions, mirror maps and one-point invariants"};
  app.require_subcommand(1);

  std::string source;
  std::string r_text, dmax_text, kmax_text, order_text, theory, S_text, d_text, k_text, lambda_text;
  std::string format = "text";
  std::string out_path;

  const std::map<std::string, std::string> about{
      {"ifun", "I-function coefficients, factored and expanded"},
      {"invariants", "mirror-map inversion and one-point descendant invariants"},
      {"verify", "cross-formula identities and structural checks"},
      {"expand", "a single coefficient at a given curve class"},
  };
  for (const auto& name : rootmirror::command_names()) {
    CLI::App* sub = app.add_subcommand(name, about.at(name));
    sub->add_option("config", source, "JSON config file or built-in alias (p2-cubic, p3-cubic-surface)")->required();
    sub->add_option("--r", r_text, "root index N, or a range A..B for verify");
    sub->add_option("--dmax", dmax_text, "degree bound for every Mori generator");
    sub->add_option("--kmax", kmax_text, "bound on |k| for extension variables");
    sub->add_option("--order", order_text, "mirror-map inversion order");
    sub->add_option("--theory", theory,
                    "absolute, root-stack, root-stack-extended, relative, extended, ambient, toric, local, gerbe-j, gerbe");
    sub->add_option("--S", S_text, "comma-separated extension data a_1,...,a_m");
    sub->add_option("--d", d_text, "curve class filter, comma-separated");
    sub->add_option("--k", k_text, "extension exponent filter, comma-separated");
    sub->add_option("--lambda-mode", lambda_text, "off or formal");
    sub->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--out", out_path, "write the report to a file instead of stdout");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    rootmirror::RunFlags flags;
    rootmirror::ConfigOverrides overrides;
    if (!theory.empty()) flags.theory = theory;
    if (!r_text.empty()) {
      flags.r_list = parse_r(r_text);
      overrides.r = flags.r_list.front();
    }
    if (!dmax_text.empty()) overrides.dmax = parse_long(dmax_text, "--dmax");
    if (!kmax_text.empty()) overrides.kmax = parse_long(kmax_text, "--kmax");
    if (!S_text.empty()) overrides.S = parse_list(S_text, "--S");
    if (!order_text.empty()) flags.order = parse_long(order_text, "--order");
    if (!d_text.empty()) flags.d = parse_list(d_text, "--d");
    if (!k_text.empty()) flags.k = parse_list(k_text, "--k");
    if (lambda_text == "formal") {
      flags.lambda_mode = rootmirror::LambdaMode::Formal;
    } else if (lambda_text == "off") {
      flags.lambda_mode = rootmirror::LambdaMode::Off;
    } else if (!lambda_text.empty()) {
      fail(ErrorKind::Config, "--lambda-mode: expected off or formal");
    }

    const auto cfg = rootmirror::load_config(source, overrides, rootmirror::extension_rule(command, flags));
    const rootmirror::RunReport report = rootmirror::run(command, cfg, flags);
    const std::string text = format == "json" ? rootmirror::report_json(report) : rootmirror::report_text(report);
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) fail(ErrorKind::Config, "--out: cannot write " + out_path);
      out << text;
    }
    return report.all_checks_pass() ? 0 : 2;
  } catch (const rootmirror::Error& e) {
    std::cerr << "rootmirror: " << e.what() << "\n";
    return 1;
  }
}
