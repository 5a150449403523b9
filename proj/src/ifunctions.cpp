#include "rootmirror/ifunctions.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "rootmirror/error.hpp"
#include "rootmirror/parallel.hpp"

namespace rootmirror {

namespace {

constexpr std::array<std::pair<Theory, std::string_view>, 10> kTheoryNames{{
    {Theory::Absolute, "absolute"},
    {Theory::RootStack, "root-stack"},
    {Theory::RootStackExtended, "root-stack-extended"},
    {Theory::Relative, "relative"},
    {Theory::RelativeExtended, "relative-extended"},
    {Theory::Ambient, "ambient"},
    {Theory::ToricDirect, "toric"},
    {Theory::Local, "local"},
    {Theory::GerbeJ, "gerbe-j"},
    {Theory::GerbeTwisted, "gerbe-twisted"},
}};

long extension_contact(const std::vector<long>& k, const std::vector<long>& S) {
  long total = 0;
  for (std::size_t i = 0; i < k.size(); ++i) total += k[i] * S[i];
  return total;
}

// x^k / (z^{|k|} prod k_i!)
void apply_extension_weight(FactoredZFunction& f, const std::vector<long>& k) {
  long total = 0;
  for (long ki : k) {
    f.times_scalar(factorial(ki).inverse());
    total += ki;
  }
  f.times_z(static_cast<int>(-total));
}

std::vector<RingElement> divisor_basis(const RingPtr& ring) {
  std::vector<RingElement> out;
  for (std::size_t i = 0; i < ring->num_divisors(); ++i) out.push_back(RingElement::divisor(ring, i));
  return out;
}

IFunction shell(Theory theory, const RingPtr& ring, SectorLabel::Kind kind, std::vector<RingElement> log_classes,
                std::size_t curves, std::size_t extensions, SeriesBounds bounds) {
  SeriesShape shape{curves, extensions, log_classes.size()};
  return IFunction{theory, ring, kind, std::move(log_classes), {}, {}, GradedSeries(shape, std::move(bounds))};
}

// Expands every recipe at every log stratum the nilpotency of the log classes allows.
void populate(IFunction& f, const RingElement& divisor, const GeometryConfig& cfg) {
  const DivisorRestriction restriction(divisor);
  const long cap = cfg.bounds.log_max.value_or(cfg.ring->complex_dimension());
  std::vector<std::vector<long>> strata;
  for (auto& ell : log_box(f.log_classes.size(), cap)) {
    RingElement pre = RingElement::one(f.ring);
    for (std::size_t i = 0; i < ell.size(); ++i) pre = pre * pow(f.log_classes[i], static_cast<int>(ell[i]));
    if (!pre.is_zero()) strata.push_back(std::move(ell));
  }
  const std::size_t n = f.recipes.size() * strata.size();
  std::vector<LaurentBlock> blocks(n);
  parallel_for(n, [&](std::size_t job) {
    const auto& recipe = f.recipes[job / strata.size()];
    blocks[job] = expand_recipe(recipe, f.log_classes, strata[job % strata.size()], restriction, cfg.bounds.z_min);
  });
  for (std::size_t job = 0; job < n; ++job) {
    SeriesIndex index = f.recipes[job / strata.size()].index;
    index.ell = strata[job % strata.size()];
    if (!f.series.bounds().admits(index)) continue;
    f.series.add(index, blocks[job]);
  }
}

SeriesIndex plain_index(const CurveClass& d, std::size_t extensions, std::size_t logs) {
  return {d, std::vector<long>(extensions, 0), std::vector<long>(logs, 0)};
}

CoefficientRecipe recipe(SeriesIndex index, SectorLabel sector, BaseJ j, const FactoredZFunction& modification,
                         bool restrict_twisted) {
  CoefficientRecipe out{std::move(index), sector, j.factored * modification, std::move(j.table), false};
  out.restrict_to_divisor = restrict_twisted && !sector.is_untwisted();
  return out;
}

FactoredZFunction unit(const RingPtr& ring) { return FactoredZFunction(ring); }

}  // namespace

std::string_view theory_name(Theory t) {
  for (const auto& [theory, name] : kTheoryNames) {
    if (theory == t) return name;
  }
  return "unknown";
}

std::optional<Theory> parse_theory(std::string_view name) {
  if (name == "extended") return Theory::RelativeExtended;
  if (name == "gerbe") return Theory::GerbeTwisted;
  for (const auto& [theory, n] : kTheoryNames) {
    if (n == name) return theory;
  }
  return std::nullopt;
}

LaurentBlock expand_recipe(const CoefficientRecipe& recipe, const std::vector<RingElement>& log_classes,
                           const std::vector<long>& ell, const DivisorRestriction& restriction,
                           std::optional<int> z_min) {
  FactoredZFunction f = recipe.factored;
  for (std::size_t i = 0; i < ell.size(); ++i) {
    if (ell[i] == 0) continue;
    f.times_z(static_cast<int>(-ell[i]));
    f.times_scalar(factorial(ell[i]).inverse());
    f.times_class(pow(log_classes[i], static_cast<int>(ell[i])));
  }
  RingLaurent expanded = expand_ring(f, z_min);
  if (recipe.base) {
    expanded = expanded * *recipe.base;
    if (z_min) expanded.restrict_window(*z_min);
  }
  if (recipe.restrict_to_divisor) {
    expanded = expanded.map_values([&](const RingElement& c) { return restriction.reduce(c); });
  }
  return place_in_sector(expanded, recipe.sector);
}

IFunction i_absolute(const GeometryConfig& cfg) {
  validate(cfg);
  const auto& ring = cfg.ring;
  const BaseJProvider provider(cfg);
  IFunction f = shell(Theory::Absolute, ring, SectorLabel::Kind::Age, divisor_basis(ring), ring->num_curve_generators(),
                      0, cfg.bounds);
  for (const auto& d : curve_box(cfg.bounds.dmax)) {
    f.recipes.push_back(recipe(plain_index(d, 0, f.log_classes.size()), SectorLabel::age(0), provider.coefficient(d),
                               unit(ring), false));
  }
  populate(f, cfg.divisor, cfg);
  return f;
}

IFunction i_root_stack(const GeometryConfig& cfg) {
  validate(cfg);
  const auto& ring = cfg.ring;
  const auto& D = cfg.divisor;
  const BaseJProvider provider(cfg);
  IFunction f = shell(Theory::RootStack, ring, SectorLabel::Kind::Age, divisor_basis(ring), ring->num_curve_generators(),
                      0, cfg.bounds);
  for (const auto& d : curve_box(cfg.bounds.dmax)) {
    const long dd = intersect(D, d);
    const FactoredZFunction mod = ascending_product(D, dd) * gamma_ratio(D * Rational(1, cfg.r), Rational(dd, cfg.r));
    f.recipes.push_back(recipe(plain_index(d, 0, f.log_classes.size()), SectorLabel::age_of(Rational(-dd, cfg.r)),
                               provider.coefficient(d), mod, true));
  }
  populate(f, D, cfg);
  return f;
}

IFunction i_root_stack_extended(const GeometryConfig& cfg) {
  validate(cfg, ExtensionRule::RootStack);
  const auto& ring = cfg.ring;
  const auto& D = cfg.divisor;
  const BaseJProvider provider(cfg);
  const std::size_t m = cfg.S.size();
  IFunction f = shell(Theory::RootStackExtended, ring, SectorLabel::Kind::Age, divisor_basis(ring),
                      ring->num_curve_generators(), m, cfg.bounds);
  for (long a : cfg.S) f.directions.push_back(SectorLabel::age_of(Rational(a, cfg.r)));
  for (const auto& d : curve_box(cfg.bounds.dmax)) {
    const long dd = intersect(D, d);
    for (const auto& k : extension_box(m, cfg.bounds.kmax)) {
      const long ext = extension_contact(k, cfg.S);
      FactoredZFunction mod = ascending_product(D, dd) * gamma_ratio(D * Rational(1, cfg.r), Rational(dd - ext, cfg.r));
      apply_extension_weight(mod, k);
      f.recipes.push_back(recipe({d, k, std::vector<long>(f.log_classes.size(), 0)},
                                 SectorLabel::age_of(Rational(ext - dd, cfg.r)), provider.coefficient(d), mod, true));
    }
  }
  populate(f, D, cfg);
  return f;
}

IFunction i_relative(const GeometryConfig& cfg) {
  validate(cfg);
  const auto& ring = cfg.ring;
  const auto& D = cfg.divisor;
  const BaseJProvider provider(cfg);
  IFunction f = shell(Theory::Relative, ring, SectorLabel::Kind::Contact, divisor_basis(ring),
                      ring->num_curve_generators(), 0, cfg.bounds);
  for (const auto& d : curve_box(cfg.bounds.dmax)) {
    const long dd = intersect(D, d);
    // D.d = 0 sits on the contact-zero sector with no modification (the I_- branch).
    const FactoredZFunction mod = dd == 0 ? unit(ring) : ascending_product(D, dd - 1);
    f.recipes.push_back(recipe(plain_index(d, 0, f.log_classes.size()), SectorLabel::contact(-dd),
                               provider.coefficient(d), mod, true));
  }
  populate(f, D, cfg);
  return f;
}

IFunction i_relative_extended(const GeometryConfig& cfg) {
  validate(cfg, ExtensionRule::Relative);
  const auto& ring = cfg.ring;
  const auto& D = cfg.divisor;
  const BaseJProvider provider(cfg);
  const std::size_t m = cfg.S.size();
  IFunction f = shell(Theory::RelativeExtended, ring, SectorLabel::Kind::Contact, divisor_basis(ring),
                      ring->num_curve_generators(), m, cfg.bounds);
  for (long a : cfg.S) f.directions.push_back(SectorLabel::contact(a));
  for (const auto& d : curve_box(cfg.bounds.dmax)) {
    const long dd = intersect(D, d);
    for (const auto& k : extension_box(m, cfg.bounds.kmax)) {
      const long ext = extension_contact(k, cfg.S);
      FactoredZFunction mod = ascending_product(D, dd);
      if (ext < dd) mod.times_factor(D, Rational(dd - ext), -1);
      apply_extension_weight(mod, k);
      f.recipes.push_back(recipe({d, k, std::vector<long>(f.log_classes.size(), 0)}, SectorLabel::contact(ext - dd),
                                 provider.coefficient(d), mod, true));
    }
  }
  populate(f, D, cfg);
  return f;
}

IFunction i_ambient_tilde(const GeometryConfig& cfg) {
  validate(cfg);
  if (cfg.lambda_mode != LambdaMode::Off) fail(ErrorKind::Mode, "the ambient I-function is built with lambda_mode off");
  const auto& ring = cfg.ring;
  const auto& D = cfg.divisor;
  const BaseJProvider provider(cfg);
  const long nmax = max_intersection(cfg) + cfg.r * cfg.ambient_slack;
  SeriesBounds bounds = cfg.bounds;
  bounds.dmax.push_back(nmax);
  std::vector<RingElement> logs = divisor_basis(ring);
  logs.push_back(D);  // log q enters through e^{D log q / z}
  IFunction f = shell(Theory::Ambient, ring, SectorLabel::Kind::Age, logs, ring->num_curve_generators() + 1, 0, bounds);
  const RingElement fiber = RingElement::zero(ring);  // i^*(h - D) = 0
  for (const auto& d : curve_box(cfg.bounds.dmax)) {
    const long dd = intersect(D, d);
    for (long n = 0; n <= nmax; ++n) {
      // Below n = D.d the fiber factor contributes (0 + 0 z) and the coefficient vanishes.
      const FactoredZFunction mod = gamma_ratio(D * Rational(1, cfg.r), Rational(n, cfg.r)) * ascending_product(D, n) *
                                    gamma_ratio(fiber, Rational(n - dd));
      std::vector<long> coords = d.coords();
      coords.push_back(n);
      f.recipes.push_back(recipe(plain_index(CurveClass(coords), 0, logs.size()), SectorLabel::age_of(Rational(-n, cfg.r)),
                                 provider.coefficient(d), mod, true));
    }
  }
  populate(f, D, cfg);
  return f;
}

IFunction i_toric_direct(const GeometryConfig& cfg) {
  validate(cfg);
  const auto& ring = cfg.ring;
  const auto& D = cfg.divisor;
  if (cfg.toric_divisors.empty()) fail(ErrorKind::MissingData, "the direct toric formula needs toric divisor data");
  auto it = std::find(cfg.toric_divisors.begin(), cfg.toric_divisors.end(), D);
  if (it == cfg.toric_divisors.end()) fail(ErrorKind::MissingData, "D = " + D.str() + " is not one of the toric divisors");
  const std::size_t j = static_cast<std::size_t>(it - cfg.toric_divisors.begin());
  IFunction f = shell(Theory::ToricDirect, ring, SectorLabel::Kind::Age, divisor_basis(ring), ring->num_curve_generators(),
                      0, cfg.bounds);
  for (const auto& d : curve_box(cfg.bounds.dmax)) {
    FactoredZFunction g(ring);
    g.times_z(1);
    for (std::size_t i = 0; i < cfg.toric_divisors.size(); ++i) {
      const auto& t = cfg.toric_divisors[i];
      const long td = intersect(t, d);
      g *= i == j ? gamma_ratio(t * Rational(1, cfg.r), Rational(td, cfg.r)) : gamma_ratio(t, Rational(td));
    }
    const long dd = intersect(D, d);
    f.recipes.push_back(recipe(plain_index(d, 0, f.log_classes.size()), SectorLabel::age_of(Rational(-dd, cfg.r)),
                               BaseJ{unit(ring), std::nullopt}, g, true));
  }
  populate(f, D, cfg);
  return f;
}

IFunction i_local(const GeometryConfig& cfg) {
  validate(cfg);
  const auto& ring = cfg.ring;
  const auto& D = cfg.divisor;
  const BaseJProvider provider(cfg);
  IFunction f = shell(Theory::Local, ring, SectorLabel::Kind::Age, divisor_basis(ring), ring->num_curve_generators(), 0,
                      cfg.bounds);
  for (const auto& d : curve_box(cfg.bounds.dmax)) {
    const long dd = intersect(D, d);
    FactoredZFunction mod(ring);
    for (long a = 0; a < dd; ++a) mod.times_factor(-D, Rational(-a), 1);
    f.recipes.push_back(recipe(plain_index(d, 0, f.log_classes.size()), SectorLabel::age(0), provider.coefficient(d), mod,
                               false));
  }
  populate(f, D, cfg);
  return f;
}

IFunction i_gerbe_j(const GeometryConfig& cfg) {
  validate(cfg);
  const auto& ring = cfg.ring;
  const BaseJProvider provider(cfg);
  IFunction f = shell(Theory::GerbeJ, ring, SectorLabel::Kind::Age, divisor_basis(ring), ring->num_curve_generators(), 0,
                      cfg.bounds);
  for (const auto& d : curve_box(cfg.bounds.dmax)) {
    for (long j = 0; j < cfg.r; ++j) {
      FactoredZFunction avg(ring);
      avg.times_scalar(Rational(1, cfg.r));
      f.recipes.push_back(recipe(plain_index(d, 0, f.log_classes.size()), SectorLabel::age(Rational(j, cfg.r)),
                                 provider.coefficient(d), avg, false));
    }
  }
  populate(f, cfg.divisor, cfg);
  return f;
}

IFunction i_gerbe_twisted(const GeometryConfig& cfg) {
  validate(cfg);
  if (cfg.lambda_mode != LambdaMode::Formal) fail(ErrorKind::Mode, "the twisted gerbe I-function needs lambda_mode formal");
  if (cfg.lambda_order < 1) fail(ErrorKind::Config, "flags.lambda_order: the formal variant needs lambda_order >= 1");
  const auto& base = cfg.ring;
  const RingPtr ring = make_product({base, make_truncated_line("lambda", cfg.lambda_order)});
  const RingElement D = product_embed_first(cfg.divisor, ring);
  const RingElement lambda = product_second_basis(ring, 1);
  // Weight 1 on O(D) and 1/r on O(D/r).
  const RingElement twisted = D + lambda;
  const BaseJProvider provider(cfg);
  std::vector<RingElement> logs;
  for (const auto& p : divisor_basis(base)) logs.push_back(product_embed_first(p, ring));
  IFunction f = shell(Theory::GerbeTwisted, ring, SectorLabel::Kind::Age, logs, base->num_curve_generators(), 0,
                      cfg.bounds);
  for (const auto& d : curve_box(cfg.bounds.dmax)) {
    const long dd = intersect(cfg.divisor, d);
    FactoredZFunction mod = ascending_product(twisted, dd) * gamma_ratio(twisted * Rational(1, cfg.r), Rational(dd, cfg.r));
    // r^{-1} from the gerbe J-function, r from reading the sector <-D.d/r> in the root-stack normalization.
    mod.times_scalar(Rational(1, cfg.r));
    mod.times_scalar(Rational(cfg.r));
    f.recipes.push_back(recipe(plain_index(d, 0, logs.size()), SectorLabel::age_of(Rational(-dd, cfg.r)),
                               provider.coefficient(d, ring, product_embed_first), mod, false));
  }
  populate(f, D, cfg);
  return f;
}

IFunction build_ifunction(Theory theory, const GeometryConfig& cfg) {
  switch (theory) {
    case Theory::Absolute:
      return i_absolute(cfg);
    case Theory::RootStack:
      return i_root_stack(cfg);
    case Theory::RootStackExtended:
      return i_root_stack_extended(cfg);
    case Theory::Relative:
      return i_relative(cfg);
    case Theory::RelativeExtended:
      return i_relative_extended(cfg);
    case Theory::Ambient:
      return i_ambient_tilde(cfg);
    case Theory::ToricDirect:
      return i_toric_direct(cfg);
    case Theory::Local:
      return i_local(cfg);
    case Theory::GerbeJ:
      return i_gerbe_j(cfg);
    case Theory::GerbeTwisted:
      return i_gerbe_twisted(cfg);
  }
  fail(ErrorKind::Config, "unknown theory");
}

LaurentBlock lambda_zero(const LaurentBlock& block, const RingPtr& base) {
  return block.map_values([&](const StateVector& v) {
    StateVector out;
    for (const auto& [label, cls] : v.terms()) out.add(label, product_slice(cls, base, 0));
    return out;
  });
}

}  // namespace rootmirror
