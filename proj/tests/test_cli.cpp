#include <doctest.h>

#include <functional>

#include "rootmirror/commands.hpp"
#include "rootmirror/config.hpp"
#include "rootmirror/error.hpp"
#include "rootmirror/mirror.hpp"
#include "rootmirror/report.hpp"

using namespace rootmirror;
using nlohmann::json;

namespace {

std::string error_text(const std::function<void()>& f, ErrorKind expected) {
  try {
    f();
  } catch (const Error& e) {
    CHECK(e.kind() == expected);
    return e.what();
  }
  FAIL("expected an error");
  return {};
}

json p2_document() { return *builtin_document("p2-cubic"); }

// P^2 given by an explicit table with its d <= 1 J-function coefficients.
json p2_table_document() {
  return json::parse(R"({
    "name": "p2-table",
    "base": {"kind": "table", "name": "P2",
             "basis": [{"name": "1", "degree": 0}, {"name": "H", "degree": 2}, {"name": "H^2", "degree": 4}],
             "products": [{"left": 1, "right": 1, "terms": [[2, 1]]}],
             "integral": [0, 0, 1],
             "divisors": [[0, 1, 0]],
             "curve_pairings": [[1]]},
    "divisor": [3],
    "bounds": {"dmax": [1]},
    "external_j": [{"d": [0], "terms": {"1": [1, 0, 0]}},
                   {"d": [1], "terms": {"-2": [1, 0, 0], "-3": [0, -3, 0], "-4": [0, 0, 6]}}]
  })");
}

const Table& table_named(const RunReport& r, const std::string& prefix) {
  for (const auto& t : r.tables) {
    if (t.title.rfind(prefix, 0) == 0) return t;
  }
  FAIL("no table " << prefix);
  return r.tables.front();
}

}  // namespace

TEST_CASE("built-in aliases") {
  const LoadedConfig p2 = load_config("p2-cubic");
  CHECK(p2.geometry.name == "p2-cubic");
  CHECK(p2.geometry.r == 5);
  CHECK(p2.geometry.ring->complex_dimension() == 2);
  CHECK(p2.geometry.bounds.dmax == std::vector<long>{3});
  CHECK(p2.geometry.asserted_anticanonical_minus_divisor_nef);
  const LoadedConfig p3 = load_config("p3-cubic-surface");
  CHECK(p3.geometry.ring->complex_dimension() == 3);
  CHECK(!builtin_document("p4").has_value());
}

TEST_CASE("digests follow the effective document") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  const LoadedConfig a = load_config("p2-cubic");
  const LoadedConfig b = load_config("p2-cubic");
  CHECK(a.digest == b.digest);
  ConfigOverrides o;
  o.r = 7;
  const LoadedConfig c = load_config("p2-cubic", o);
  CHECK(c.digest != a.digest);
  CHECK(c.geometry.r == 7);
  CHECK(c.document["r"] == 7);
}

TEST_CASE("overrides for bounds and S") {
  ConfigOverrides o;
  o.dmax = 4;
  o.kmax = 3;
  o.S = std::vector<long>{1, 2};
  const LoadedConfig c = load_config("p2-cubic", o, ExtensionRule::RootStack);
  CHECK(c.geometry.bounds.dmax == std::vector<long>{4});
  CHECK(c.geometry.bounds.kmax == 3);
  CHECK(c.geometry.S == std::vector<long>{1, 2});
}

TEST_CASE("configuration errors name the field") {
  json doc = p2_document();
  doc["colour"] = "red";
  CHECK(error_text([&] { config_from_json(doc); }, ErrorKind::Config).find("colour") != std::string::npos);

  doc = p2_document();
  doc["divisor"] = json::array({3, 1});
  CHECK(error_text([&] { config_from_json(doc); }, ErrorKind::Config).find("divisor") != std::string::npos);

  doc = p2_document();
  doc["bounds"]["kmax"] = "two";
  CHECK(error_text([&] { config_from_json(doc); }, ErrorKind::Config).find("bounds.kmax") != std::string::npos);

  doc = p2_document();
  doc["flags"]["lambda_mode"] = "sometimes";
  CHECK(error_text([&] { config_from_json(doc); }, ErrorKind::Config).find("flags.lambda_mode") != std::string::npos);

  doc = p2_document();
  doc["base"] = {{"kind", "grassmannian"}};
  CHECK(error_text([&] { config_from_json(doc); }, ErrorKind::Config).find("base.kind") != std::string::npos);

  doc = p2_document();
  doc["S"] = json::array({7});
  CHECK(error_text([&] { config_from_json(doc, ExtensionRule::RootStack); }, ErrorKind::Config).find("S[0]") !=
        std::string::npos);
  CHECK_NOTHROW(config_from_json(doc, ExtensionRule::Relative));

  doc = p2_document();
  doc["r"] = 0;
  CHECK(error_text([&] { config_from_json(doc); }, ErrorKind::Config).find("r") != std::string::npos);

  CHECK(error_text([] { load_config("no-such-config.json"); }, ErrorKind::Config).find("no-such-config.json") !=
        std::string::npos);
}

TEST_CASE("product bases") {
  json doc = json::parse(R"({"base": {"kind": "product", "factors": [1, 1]}, "divisor": [1, 1], "r": 3,
                             "bounds": {"dmax": 2}})");
  const GeometryConfig cfg = config_from_json(doc);
  CHECK(cfg.ring->num_curve_generators() == 2);
  CHECK(cfg.bounds.dmax == std::vector<long>{2, 2});
  CHECK(intersect(cfg.divisor, CurveClass({1, 1})) == 2);
}

TEST_CASE("a table base with an external J-function") {
  const GeometryConfig cfg = config_from_json(p2_table_document());
  CHECK(cfg.j_mode == JMode::ExternalTable);
  const PipelineResult res = run_invariants(Theory::Relative, cfg, 1);
  REQUIRE(res.records.size() == 1);
  CHECK(res.records[0].value == Rational(9));

  const GeometryConfig proj = projective_config(2, 3, 1, 1);
  const PipelineResult direct = run_invariants(Theory::Absolute, proj, 1);
  const PipelineResult table = run_invariants(Theory::Absolute, cfg, 1);
  REQUIRE(direct.records.size() == table.records.size());
  for (std::size_t i = 0; i < direct.records.size(); ++i) CHECK(direct.records[i].value == table.records[i].value);

  json missing = p2_table_document();
  missing["bounds"]["dmax"] = json::array({2});
  const GeometryConfig two = config_from_json(missing);
  CHECK(error_text([&] { i_absolute(two); }, ErrorKind::MissingData).find("d = (2)") != std::string::npos);
}

TEST_CASE("default theories and extension rules") {
  RunFlags flags;
  CHECK(selected_theory("invariants", flags) == Theory::Relative);
  CHECK(selected_theory("ifun", flags) == Theory::RootStack);
  CHECK(extension_rule("verify", flags) == ExtensionRule::None);
  flags.theory = "relative-extended";
  CHECK(extension_rule("ifun", flags) == ExtensionRule::Relative);
  flags.theory = "nonsense";
  CHECK(error_text([&] { selected_theory("ifun", flags); }, ErrorKind::Config).find("--theory") != std::string::npos);
}

TEST_CASE("ifun report for the root stack of the plane") {
  const LoadedConfig cfg = load_config("p2-cubic");
  RunFlags flags;
  flags.d = std::vector<long>{1};
  const RunReport r = run("ifun", cfg, flags);
  const Table& fac = table_named(r, "factored");
  REQUIRE(fac.rows.size() == 1);
  CHECK(fac.rows[0][2] == "age 2/5");
  const Table& exp = table_named(r, "expanded");
  CHECK(exp.columns == std::vector<std::string>{"d", "k", "ell", "sector", "z", "1", "H", "H^2"});
  bool found = false;
  for (const auto& row : exp.rows) {
    if (row[2] == "(0)" && row[4] == "0") {
      CHECK(row[5] == "10");
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("expand needs a curve class within the bounds") {
  const LoadedConfig cfg = load_config("p2-cubic");
  RunFlags flags;
  CHECK(error_text([&] { run("expand", cfg, flags); }, ErrorKind::Config).find("--d") != std::string::npos);
  flags.d = std::vector<long>{9};
  error_text([&] { run("expand", cfg, flags); }, ErrorKind::Bounds);
  flags.d = std::vector<long>{2};
  flags.theory = "relative";
  const RunReport r = run("expand", cfg, flags);
  for (const auto& t : r.tables) {
    for (const auto& row : t.rows) CHECK(row[0] == "(2)");
  }
}

TEST_CASE("JSON reports round-trip to exact values") {
  const LoadedConfig cfg = load_config("p2-cubic");
  RunFlags flags;
  const RunReport r = run("invariants", cfg, flags);
  const json doc = json::parse(report_json(r));
  CHECK(doc["config"]["digest"] == cfg.digest);
  CHECK(doc["command"] == "invariants");
  const Table inv = table_from_json(doc["tables"][0]);
  CHECK(inv.columns == r.tables[0].columns);
  CHECK(inv.rows == r.tables[0].rows);
  std::vector<Rational> values;
  for (const auto& row : inv.rows) values.push_back(Rational::parse(row.back()));
  CHECK(values == std::vector<Rational>{Rational(9), Rational(135, 4), Rational(244)});
  CHECK(report_json(r) == report_json(run("invariants", cfg, flags)));
  CHECK_THROWS_AS(table_from_json(json::object()), Error);
}

TEST_CASE("text reports list notes and tables") {
  const LoadedConfig cfg = load_config("p2-cubic");
  const std::string text = report_text(run("invariants", cfg, RunFlags{}));
  CHECK(text.find("route: relative I-function") != std::string::npos);
  CHECK(text.find("135/4") != std::string::npos);
  CHECK(text.find(cfg.digest) != std::string::npos);
}

TEST_CASE("verify suite on the plane with a cubic") {
  ConfigOverrides o;
  o.dmax = 3;
  const LoadedConfig cfg = load_config("p2-cubic", o);
  RunFlags flags;
  flags.r_list = {12, 13};
  const RunReport r = run("verify", cfg, flags);
  CHECK(r.checks.size() == 16);
  for (const auto& c : r.checks) CHECK_MESSAGE(c.passed(), c.name << ": " << c.witness);
  CHECK(r.all_checks_pass());

  flags.r_list = {3};
  const RunReport small = run("verify", cfg, flags);
  CHECK(!small.all_checks_pass());
}
