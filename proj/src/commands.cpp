#include "rootmirror/commands.hpp"

#include <algorithm>

#include "rootmirror/checks.hpp"
#include "rootmirror/error.hpp"
#include "rootmirror/mirror.hpp"

namespace rootmirror {

using nlohmann::json;

namespace {

std::string join(const std::vector<long>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + ")";
}

bool matches(const SeriesIndex& index, const RunFlags& flags) {
  if (flags.d) {
    const auto& c = index.d.coords();
    if (c.size() < flags.d->size() || !std::equal(flags.d->begin(), flags.d->end(), c.begin())) return false;
  }
  if (flags.k && index.k != *flags.k) return false;
  return true;
}

json bounds_json(const GeometryConfig& cfg, std::optional<long> order) {
  json b;
  b["dmax"] = cfg.bounds.dmax;
  b["kmax"] = cfg.bounds.kmax;
  b["z_min"] = cfg.bounds.z_min ? json(*cfg.bounds.z_min) : json(nullptr);
  b["log_max"] = cfg.bounds.log_max ? json(*cfg.bounds.log_max) : json(nullptr);
  b["r"] = cfg.r;
  b["S"] = cfg.S;
  if (order) b["order"] = *order;
  return b;
}

RunReport base_report(const std::string& command, const LoadedConfig& cfg, const GeometryConfig& geometry,
                      std::optional<long> order) {
  RunReport r;
  r.command = command;
  r.config_name = geometry.name;
  r.config_digest = cfg.digest;
  r.bounds = bounds_json(geometry, order);
  return r;
}

Table factored_table(const IFunction& f, const RunFlags& flags) {
  Table t{"factored coefficients (" + std::string(theory_name(f.theory)) + ")", {"d", "k", "sector", "coefficient"}, {}};
  for (const auto& recipe : f.recipes) {
    if (!matches(recipe.index, flags)) continue;
    std::string text = recipe.factored.str();
    if (recipe.base) text += " * J_d[table]";
    if (recipe.restrict_to_divisor) text += "  (restricted to D)";
    t.rows.push_back({recipe.index.d.str(), join(recipe.index.k), recipe.sector.str(), text});
  }
  return t;
}

Table expanded_table(const IFunction& f, const RunFlags& flags) {
  Table t{"expanded coefficients (" + std::string(theory_name(f.theory)) + ")", {"d", "k", "ell", "sector", "z"}, {}};
  for (std::size_t i = 0; i < f.ring->dim(); ++i) t.columns.push_back(f.ring->monomial(i).name);
  for (const auto& [index, block] : f.series.entries()) {
    if (!matches(index, flags)) continue;
    for (auto it = block.coeffs().rbegin(); it != block.coeffs().rend(); ++it) {
      for (const auto& [label, cls] : it->second.terms()) {
        std::vector<std::string> row{index.d.str(), join(index.k), join(index.ell), label.str(), std::to_string(it->first)};
        for (std::size_t i = 0; i < f.ring->dim(); ++i) row.push_back(cls[i].str());
        t.rows.push_back(std::move(row));
      }
    }
    if (block.floor()) {
      t.rows.push_back({index.d.str(), join(index.k), join(index.ell), "window", "O(z^" + std::to_string(*block.floor() - 1) + ")"});
    }
  }
  return t;
}

GeometryConfig with_flags(const GeometryConfig& cfg, const RunFlags& flags) {
  GeometryConfig g = cfg;
  if (flags.lambda_mode) g.lambda_mode = *flags.lambda_mode;
  return g;
}

bool uses_extension(Theory t) { return t == Theory::RootStackExtended || t == Theory::RelativeExtended; }

RunReport run_ifun(const LoadedConfig& cfg, const RunFlags& flags, Theory theory) {
  const GeometryConfig g = with_flags(cfg.geometry, flags);
  const IFunction f = build_ifunction(theory, g);
  RunReport r = base_report("ifun", cfg, g, std::nullopt);
  r.notes.push_back("theory " + std::string(theory_name(theory)));
  r.tables.push_back(factored_table(f, flags));
  r.tables.push_back(expanded_table(f, flags));
  return r;
}

RunReport run_expand(const LoadedConfig& cfg, const RunFlags& flags, Theory theory) {
  if (!flags.d) fail(ErrorKind::Config, "--d: expand needs the curve class of the coefficient");
  const GeometryConfig g = with_flags(cfg.geometry, flags);
  const IFunction f = build_ifunction(theory, g);
  RunFlags exact = flags;
  if (!exact.k) exact.k = std::vector<long>(f.series.shape().extensions, 0);
  const bool found = std::any_of(f.recipes.begin(), f.recipes.end(), [&](const CoefficientRecipe& c) {
    return c.index.d.coords() == *exact.d && c.index.k == *exact.k;
  });
  if (!found) {
    fail(ErrorKind::Bounds, "no coefficient at d = " + join(*exact.d) + ", k = " + join(*exact.k) + " within the bounds");
  }
  RunReport r = base_report("expand", cfg, g, std::nullopt);
  r.notes.push_back("theory " + std::string(theory_name(theory)));
  Table fac = factored_table(f, exact);
  Table exp = expanded_table(f, exact);
  auto keep_exact = [&](Table& t) {
    std::erase_if(t.rows, [&](const std::vector<std::string>& row) { return row[0] != CurveClass(*exact.d).str(); });
  };
  keep_exact(fac);
  keep_exact(exp);
  r.tables.push_back(std::move(fac));
  r.tables.push_back(std::move(exp));
  return r;
}

RunReport run_invariants_command(const LoadedConfig& cfg, const RunFlags& flags, Theory theory) {
  const GeometryConfig g = with_flags(cfg.geometry, flags);
  const long order = flags.order.value_or(default_order(g, uses_extension(theory)));
  const PipelineResult res = run_invariants(theory, g, order);
  RunReport r = base_report("invariants", cfg, g, order);
  r.notes.push_back("route: " + res.route);
  r.notes.push_back("J-function from " + res.j.provenance);
  if (theory == Theory::Relative || theory == Theory::RelativeExtended) {
    r.notes.push_back(std::string("hypothesis -K_X - D nef: ") +
                      (g.asserted_anticanonical_minus_divisor_nef ? "asserted" : "not asserted"));
  }
  Table inv{"invariants", {"theory", "d", "sector", "insertion", "psi", "value"}, {}};
  for (const auto& rec : res.records) {
    inv.rows.push_back({invariant_theory_name(rec.theory), rec.d.str(), rec.sector.str(), rec.insertion.str(),
                        std::to_string(rec.psi_power), rec.value.str()});
  }
  r.tables.push_back(std::move(inv));
  Table steps{"mirror map inversion", {"monomial", "direction", "role", "coefficient"}, {}};
  for (const auto& s : res.j.steps) steps.rows.push_back({join(s.monomial), s.direction, s.role, s.coefficient.str()});
  r.tables.push_back(std::move(steps));
  Table novikov{"novikov inverse Q(q)", {"j", "series"}, {}};
  std::vector<std::string> names;
  for (std::size_t j = 0; j < res.j.novikov_inverse.size(); ++j) names.push_back("q" + std::to_string(j + 1));
  for (std::size_t j = 0; j < res.j.novikov_inverse.size(); ++j) {
    novikov.rows.push_back({std::to_string(j + 1), series_str(res.j.novikov_inverse[j], names)});
  }
  r.tables.push_back(std::move(novikov));
  return r;
}

RunReport run_verify(const LoadedConfig& cfg, const RunFlags& flags) {
  const GeometryConfig g = with_flags(cfg.geometry, flags);
  RunReport r = base_report("verify", cfg, g, std::nullopt);
  std::string list;
  for (long x : flags.r_list) list += (list.empty() ? "" : ",") + std::to_string(x);
  r.notes.push_back("r values: " + (list.empty() ? std::string("chosen above the stabilization threshold") : list));
  r.checks = verify_suite(g, flags.r_list);
  return r;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"ifun", "invariants", "verify", "expand"};
  return names;
}

Theory selected_theory(const std::string& command, const RunFlags& flags) {
  if (flags.theory) {
    if (auto t = parse_theory(*flags.theory)) return *t;
    fail(ErrorKind::Config, "--theory: unknown theory \"" + *flags.theory + "\"");
  }
  return command == "invariants" ? Theory::Relative : Theory::RootStack;
}

ExtensionRule extension_rule(const std::string& command, const RunFlags& flags) {
  if (command == "verify") return ExtensionRule::None;
  switch (selected_theory(command, flags)) {
    case Theory::RootStack:
    case Theory::RootStackExtended:
      return ExtensionRule::RootStack;
    case Theory::Relative:
    case Theory::RelativeExtended:
      return ExtensionRule::Relative;
    default:
      return ExtensionRule::None;
  }
}

RunReport run(const std::string& command, const LoadedConfig& cfg, const RunFlags& flags) {
  if (command == "verify") return run_verify(cfg, flags);
  const Theory theory = selected_theory(command, flags);
  if (command == "ifun") return run_ifun(cfg, flags, theory);
  if (command == "expand") return run_expand(cfg, flags, theory);
  if (command == "invariants") return run_invariants_command(cfg, flags, theory);
  fail(ErrorKind::Config, "unknown command \"" + command + "\"; expected ifun, invariants, verify or expand");
}

}  // namespace rootmirror
