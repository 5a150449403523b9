#include "rootmirror/geometry.hpp"

#include <algorithm>
#include <functional>

#include "rootmirror/error.hpp"

namespace rootmirror {

std::string jmode_name(JMode mode) {
  switch (mode) {
    case JMode::ProjectiveSpace:
      return "projective-space";
    case JMode::Toric:
      return "hypergeometric-toric";
    case JMode::ExternalTable:
      return "external-table";
  }
  return "unknown";
}

std::vector<RingElement> standard_toric_divisors(const RingPtr& ring) {
  std::vector<RingElement> out;
  const auto& dims = ring->factor_dims();
  if (dims.empty()) {
    if (ring->num_divisors() != 1 || ring->dim() != static_cast<std::size_t>(ring->complex_dimension() + 1)) {
      fail(ErrorKind::MissingData, "ring " + ring->name() + " has no standard toric divisors");
    }
    for (std::size_t c = 0; c < ring->dim(); ++c) out.push_back(RingElement::divisor(ring, 0));
    return out;
  }
  if (dims.size() != ring->num_divisors()) fail(ErrorKind::MissingData, "ring " + ring->name() + " has no standard toric divisors");
  for (std::size_t f = 0; f < dims.size(); ++f) {
    for (std::size_t c = 0; c < dims[f]; ++c) out.push_back(RingElement::divisor(ring, f));
  }
  return out;
}

GeometryConfig projective_config(int n, long degree, long r, long dmax) {
  const RingPtr ring = make_projective_space(n);
  GeometryConfig cfg(ring, RingElement::divisor(ring, 0) * Rational(degree));
  cfg.name = "P" + std::to_string(n) + "-degree-" + std::to_string(degree);
  cfg.r = r;
  cfg.bounds.dmax = {dmax};
  cfg.j_mode = JMode::ProjectiveSpace;
  cfg.toric_divisors = standard_toric_divisors(ring);
  return cfg;
}

void validate(const GeometryConfig& cfg, ExtensionRule rule) {
  if (!cfg.ring) fail(ErrorKind::Config, "configuration has no base ring");
  if (cfg.divisor.ring() != cfg.ring) fail(ErrorKind::RingMismatch, "divisor is not a class of the base ring");
  if (cfg.divisor.homogeneous_degree().value_or(2) != 2) fail(ErrorKind::Grading, "divisor must have degree 2");
  if (cfg.r < 1) fail(ErrorKind::Config, "r: root index must be positive, got " + std::to_string(cfg.r));
  if (!is_nef(cfg.divisor)) {
    for (std::size_t g = 0; g < cfg.ring->num_curve_generators(); ++g) {
      std::vector<long> unit(cfg.ring->num_curve_generators(), 0);
      unit[g] = 1;
      const long v = intersect(cfg.divisor, CurveClass(unit));
      if (v < 0) {
        fail(ErrorKind::Nef, "divisor: D . g" + std::to_string(g + 1) + " = " + std::to_string(v) + " < 0, D is not nef");
      }
    }
    fail(ErrorKind::Nef, "divisor: D is not nef");
  }
  if (cfg.bounds.dmax.size() != cfg.ring->num_curve_generators()) {
    fail(ErrorKind::Config, "bounds.dmax: expected " + std::to_string(cfg.ring->num_curve_generators()) +
                                " entries, one per Mori generator");
  }
  for (long b : cfg.bounds.dmax) {
    if (b < 0) fail(ErrorKind::Config, "bounds.dmax: entries must be nonnegative");
  }
  if (cfg.bounds.kmax < 0) fail(ErrorKind::Config, "bounds.kmax: must be nonnegative");
  for (std::size_t i = 0; i < cfg.S.size(); ++i) {
    const long a = cfg.S[i];
    if (rule == ExtensionRule::RootStack && (a < 0 || a >= cfg.r)) {
      fail(ErrorKind::Config, "S[" + std::to_string(i) + "] = " + std::to_string(a) + " lies outside {0, ..., r-1} for r = " +
                                  std::to_string(cfg.r));
    }
    if (rule == ExtensionRule::Relative && a <= 0) {
      fail(ErrorKind::Config, "S[" + std::to_string(i) + "] = " + std::to_string(a) + " must be a positive contact order");
    }
  }
  if (cfg.lambda_order < 0) fail(ErrorKind::Config, "flags.lambda_order: must be nonnegative");
  if (cfg.ambient_slack < 0) fail(ErrorKind::Config, "flags.ambient_slack: must be nonnegative");
}

std::vector<CurveClass> curve_box(const std::vector<long>& dmax) {
  std::vector<CurveClass> out;
  std::vector<long> cur(dmax.size(), 0);
  for (;;) {
    out.emplace_back(cur);
    std::size_t i = cur.size();
    while (i > 0 && cur[i - 1] == dmax[i - 1]) {
      cur[i - 1] = 0;
      --i;
    }
    if (i == 0) return out;
    ++cur[i - 1];
  }
}

namespace {

void simplex(std::size_t m, long cap, std::vector<long>& cur, std::size_t pos, long used,
             std::vector<std::vector<long>>& out) {
  if (pos == m) {
    out.push_back(cur);
    return;
  }
  for (long v = 0; used + v <= cap; ++v) {
    cur[pos] = v;
    simplex(m, cap, cur, pos + 1, used + v, out);
  }
  cur[pos] = 0;
}

}  // namespace

std::vector<std::vector<long>> extension_box(std::size_t m, long kmax) {
  std::vector<std::vector<long>> out;
  std::vector<long> cur(m, 0);
  simplex(m, kmax, cur, 0, 0, out);
  return out;
}

std::vector<std::vector<long>> log_box(std::size_t m, long cap) { return extension_box(m, cap); }

long max_intersection(const GeometryConfig& cfg) {
  long best = 0;
  for (const auto& d : curve_box(cfg.bounds.dmax)) best = std::max(best, intersect(cfg.divisor, d));
  return best;
}

BaseJProvider::BaseJProvider(const GeometryConfig& cfg) : cfg_(&cfg), mode_(cfg.j_mode) {
  const auto& ring = cfg.ring;
  if (mode_ == JMode::ProjectiveSpace) {
    if (ring->num_divisors() != 1 || ring->num_curve_generators() != 1 ||
        ring->dim() != static_cast<std::size_t>(ring->complex_dimension() + 1)) {
      fail(ErrorKind::Config, "projective-space mode needs a projective-space base ring");
    }
  } else if (mode_ == JMode::Toric) {
    if (cfg.toric_divisors.empty()) fail(ErrorKind::MissingData, "toric mode needs the toric divisor classes");
    for (const auto& t : cfg.toric_divisors) {
      if (t.ring() != ring) fail(ErrorKind::RingMismatch, "toric divisor over a different ring");
    }
  }
}

BaseJ BaseJProvider::coefficient(const CurveClass& d) const {
  return coefficient(d, cfg_->ring, [](const RingElement& e, const RingPtr&) { return e; });
}

BaseJ BaseJProvider::coefficient(const CurveClass& d, const RingPtr& target,
                                 RingElement (*embed)(const RingElement&, const RingPtr&)) const {
  FactoredZFunction f(target);
  f.times_z(1);
  switch (mode_) {
    case JMode::ProjectiveSpace: {
      const RingElement h = embed(RingElement::divisor(cfg_->ring, 0), target);
      const int copies = cfg_->ring->complex_dimension() + 1;
      for (long a = 1; a <= d[0]; ++a) {
        for (int c = 0; c < copies; ++c) f.times_factor(h, Rational(a), -1);
      }
      return {f, std::nullopt};
    }
    case JMode::Toric: {
      for (const auto& t : cfg_->toric_divisors) f *= gamma_ratio(embed(t, target), Rational(intersect(t, d)));
      return {f, std::nullopt};
    }
    case JMode::ExternalTable: {
      auto it = cfg_->external_j.find(d);
      if (it == cfg_->external_j.end()) fail(ErrorKind::MissingData, "external J-table has no entry for d = " + d.str());
      FactoredZFunction unit(target);
      return {unit, it->second.map_values([&](const RingElement& e) { return embed(e, target); })};
    }
  }
  fail(ErrorKind::Config, "unknown J mode");
}

LaurentBlock j_base(const GeometryConfig& cfg, const CurveClass& d, const std::vector<long>& ell) {
  const BaseJProvider provider(cfg);
  BaseJ j = provider.coefficient(d);
  const auto& ring = cfg.ring;
  if (!ell.empty()) {
    if (ell.size() != ring->num_divisors()) fail(ErrorKind::Bounds, "one log exponent per divisor basis element expected");
    for (std::size_t i = 0; i < ell.size(); ++i) {
      j.factored.times_z(static_cast<int>(-ell[i]));
      j.factored.times_scalar(factorial(ell[i]).inverse());
      j.factored.times_class(pow(RingElement::divisor(ring, i), static_cast<int>(ell[i])));
    }
  }
  RingLaurent expanded = expand_ring(j.factored, cfg.bounds.z_min);
  if (j.table) expanded = expanded * *j.table;
  return place_in_sector(expanded, SectorLabel::age(0));
}

}  // namespace rootmirror
