#include "rootmirror/checks.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <tuple>

#include "rootmirror/error.hpp"
#include "rootmirror/factored.hpp"
#include "rootmirror/ifunctions.hpp"
#include "rootmirror/linalg.hpp"
#include "rootmirror/mirror.hpp"

namespace rootmirror {

namespace {

class Tally {
 public:
  explicit Tally(std::string name) { result_.name = std::move(name); }

  // Records one comparison; the witness is only built for the first failure.
  void expect(bool ok, const std::function<std::string()>& witness) {
    ++result_.cases;
    if (ok || result_.status == CheckStatus::Fail) return;
    result_.status = CheckStatus::Fail;
    result_.witness = witness();
  }

  CheckResult skip(std::string reason) {
    result_.status = CheckStatus::Skip;
    result_.witness = std::move(reason);
    return result_;
  }

  CheckResult done() const { return result_; }

 private:
  CheckResult result_;
};

// Runs a check body, turning a contract violation into a failed verdict.
CheckResult guarded(const std::string& name, const std::function<CheckResult()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    return {name, CheckStatus::Fail, e.what(), 0};
  }
}

LaurentBlock normalized(const LaurentBlock* b, const SectorPairingContext& ctx) {
  if (!b) return {};
  return b->map_values([&](const StateVector& v) { return ctx.normalize(v); });
}

template <class F>
void for_each_index(const GradedSeries& a, const GradedSeries& b, F&& f) {
  std::set<SeriesIndex> all;
  for (const auto& [index, block] : a.entries()) all.insert(index);
  for (const auto& [index, block] : b.entries()) all.insert(index);
  for (const auto& index : all) f(index);
}

std::string mismatch(const SeriesIndex& index, const LaurentBlock& lhs, const LaurentBlock& rhs) {
  return index.str() + ": " + block_str(lhs) + " vs " + block_str(rhs);
}

// Compares two I-functions of the same shape entry by entry after normalization.
void compare_series(Tally& t, const GradedSeries& lhs, const GradedSeries& rhs, const SectorPairingContext& ctx) {
  for_each_index(lhs, rhs, [&](const SeriesIndex& index) {
    const LaurentBlock a = normalized(lhs.find(index), ctx);
    const LaurentBlock b = normalized(rhs.find(index), ctx);
    t.expect(agree(a, b), [&] { return mismatch(index, a, b); });
  });
}

RingElement random_nilpotent(const RingPtr& ring, std::mt19937& rng) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  RationalVector c(ring->dim());
  for (std::size_t i = 1; i < ring->dim(); ++i) c[i] = Rational(coeff(rng));
  return RingElement(ring, c);
}

Rational random_rational(std::mt19937& rng, long pmin, long pmax, long qmax) {
  std::uniform_int_distribution<long> p(pmin, pmax);
  std::uniform_int_distribution<long> q(1, qmax);
  return Rational(p(rng), q(rng));
}

std::vector<long> extension_or_default(const GeometryConfig& cfg) {
  return cfg.S.empty() ? std::vector<long>{1} : cfg.S;
}

long threshold(const GeometryConfig& cfg) { return max_intersection(cfg); }

std::map<std::tuple<CurveClass, std::string, long>, Rational> record_map(const std::vector<InvariantRecord>& records) {
  std::map<std::tuple<CurveClass, std::string, long>, Rational> out;
  for (const auto& rec : records) out[{rec.d, rec.insertion.str(), rec.psi_power}] += rec.value;
  return out;
}

std::string record_key(const std::tuple<CurveClass, std::string, long>& key) {
  return "d = " + std::get<0>(key).str() + ", insertion " + std::get<1>(key) + " psi^" + std::to_string(std::get<2>(key));
}

}  // namespace

std::string check_status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::Fail:
      return "fail";
    case CheckStatus::Skip:
      return "skip";
  }
  return "unknown";
}

CheckResult check_pairing_structure(const GeometryConfig& cfg, long r) {
  return guarded("pairing-structure", [&] {
    Tally t("pairing-structure");
    auto run = [&](const SectorPairingContext& ctx, const std::vector<SectorLabel>& sectors) {
      for (const auto& a : sectors) {
        const auto basis_a = ctx.sector_basis(a);
        for (const auto& b : sectors) {
          const auto basis_b = ctx.sector_basis(b);
          RationalMatrix gram(basis_a.size(), RationalVector(basis_b.size()));
          for (std::size_t i = 0; i < basis_a.size(); ++i) {
            for (std::size_t j = 0; j < basis_b.size(); ++j) {
              const StateVector u(a, basis_a[i]);
              const StateVector v(b, basis_b[j]);
              gram[i][j] = pair(u, v, ctx);
              t.expect(gram[i][j] == pair(v, u, ctx), [&] { return "asymmetric on " + u.str() + ", " + v.str(); });
              if (b != a.opposite()) {
                t.expect(gram[i][j].is_zero(), [&] { return "nonzero off-block pairing " + u.str() + ", " + v.str(); });
              }
            }
          }
          if (b == a.opposite()) {
            const bool square = basis_a.size() == basis_b.size();
            const bool full = square && reduced_row_echelon(gram).pivots.size() == basis_a.size();
            t.expect(full, [&] { return "degenerate block between " + a.str() + " and " + b.str(); });
          }
        }
      }
    };
    std::vector<SectorLabel> ages;
    for (long j = 0; j < r; ++j) {
      if (r <= 32 || j < 16 || j >= r - 16) ages.push_back(SectorLabel::age(Rational(j, r)));
    }
    run(SectorPairingContext(cfg.divisor, r), ages);
    std::vector<SectorLabel> contacts;
    const long m = threshold(cfg) + 1;
    for (long i = -m; i <= m; ++i) contacts.push_back(SectorLabel::contact(i));
    run(SectorPairingContext(cfg.divisor, std::nullopt), contacts);
    return t.done();
  });
}

CheckResult check_gamma_inverse_law(const RingPtr& ring, int samples, std::uint32_t seed) {
  return guarded("gamma-ratio-inverse", [&] {
    Tally t("gamma-ratio-inverse");
    std::mt19937 rng(seed);
    const RingLaurent one = RingLaurent::term(0, RingElement::one(ring));
    for (int s = 0; s < samples; ++s) {
      const RingElement cls = random_nilpotent(ring, rng);
      const Rational c = random_rational(rng, 0, 15, 5);
      FactoredZFunction finite(ring);
      Rational a = c.frac().is_zero() ? Rational(1) : c.frac();
      for (; a <= c; a += 1) finite.times_factor(cls, a, 1);
      const RingLaurent product = expand_ring(gamma_ratio(cls, c)) * expand_ring(finite);
      t.expect(product == one, [&] { return "cls = " + cls.str() + ", c = " + c.str() + ": " + block_str(product); });
    }
    return t.done();
  });
}

CheckResult check_expand_multiplicative(const RingPtr& ring, int samples, std::uint32_t seed) {
  return guarded("expand-multiplicative", [&] {
    Tally t("expand-multiplicative");
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> count(1, 3);
    std::uniform_int_distribution<int> sign(0, 1);
    std::uniform_int_distribution<int> zpow(-2, 2);
    auto random_function = [&] {
      FactoredZFunction f(ring);
      f.times_z(zpow(rng));
      f.times_scalar(random_rational(rng, 1, 6, 3));
      for (int i = count(rng); i > 0; --i) f.times_factor(random_nilpotent(ring, rng), random_rational(rng, 1, 4, 3), sign(rng) ? 1 : -1);
      return f;
    };
    for (int s = 0; s < samples; ++s) {
      const FactoredZFunction f = random_function();
      const FactoredZFunction g = random_function();
      const RingLaurent whole = expand_ring(f * g);
      const RingLaurent parts = expand_ring(f) * expand_ring(g);
      t.expect(whole == parts, [&] { return f.str() + " times " + g.str(); });
      const int zmin = std::min(f.lowest_exponent(), g.lowest_exponent()) + 1;
      const RingLaurent windowed = expand_ring(f, zmin) * expand_ring(g, zmin);
      t.expect(agree(expand_ring(f * g, zmin), windowed), [&] { return "windowed: " + f.str() + " times " + g.str(); });
    }
    return t.done();
  });
}

CheckResult check_exp_divisor_relation(const GeometryConfig& cfg) {
  return guarded("exp-divisor-relation", [&] {
    Tally t("exp-divisor-relation");
    const RingPtr& ring = cfg.ring;
    const SeriesShape shape{ring->num_curve_generators(), 0, ring->num_divisors()};
    SeriesBounds bounds = cfg.bounds;
    bounds.kmax = 0;
    const long cap = ring->complex_dimension() + 1;
    bounds.log_max = cap;
    for (std::size_t i = 0; i < ring->num_divisors(); ++i) {
      const RingElement cls = RingElement::divisor(ring, i);
      const GradedSeries e = exp_divisor_over_z(cls, i, shape, bounds);
      const RingLaurent over_z = RingLaurent::term(-1, cls);
      for (const auto& [index, block] : e.entries()) {
        if (index.ell_total() + 1 > cap) continue;
        SeriesIndex next = index;
        next.ell[i] += 1;
        const LaurentBlock* d = e.find(next);
        const LaurentBlock lhs = d ? *d * Rational(next.ell[i]) : LaurentBlock();
        const LaurentBlock rhs = act(over_z, block);
        t.expect(lhs == rhs, [&] { return mismatch(next, lhs, rhs); });
      }
    }
    return t.done();
  });
}

CheckResult check_extension_zero(const GeometryConfig& cfg) {
  return guarded("extension-zero", [&] {
    Tally t("extension-zero");
    GeometryConfig ext = cfg;
    ext.S = extension_or_default(cfg);
    auto reduce = [&](const IFunction& plain, const IFunction& extended, const SectorPairingContext& ctx) {
      for (const auto& [index, block] : plain.series.entries()) {
        const SeriesIndex at_zero{index.d, std::vector<long>(ext.S.size(), 0), index.ell};
        const LaurentBlock a = normalized(&block, ctx);
        const LaurentBlock b = normalized(extended.series.find(at_zero), ctx);
        t.expect(agree(a, b), [&] { return std::string(theory_name(plain.theory)) + " " + mismatch(index, a, b); });
      }
    };
    if (std::all_of(ext.S.begin(), ext.S.end(), [&](long a) { return a < cfg.r; })) {
      reduce(i_root_stack(cfg), i_root_stack_extended(ext), SectorPairingContext(cfg.divisor, cfg.r));
    }
    reduce(i_relative(cfg), i_relative_extended(ext), SectorPairingContext(cfg.divisor, std::nullopt));
    return t.done();
  });
}

CheckResult check_local_sign(const GeometryConfig& cfg) {
  return guarded("local-sign", [&] {
    Tally t("local-sign");
    const IFunction loc = i_local(cfg);
    const IFunction rel = i_relative(cfg);
    const RingElement& D = cfg.divisor;
    for_each_index(loc.series, rel.series, [&](const SeriesIndex& index) {
      const long dd = intersect(D, index.d);
      if (dd == 0) return;  // no D cup factor on the contact-0 sector
      const Rational sign = dd % 2 == 0 ? Rational(1) : Rational(-1);
      RingLaurent lhs;
      if (const LaurentBlock* b = loc.series.find(index)) {
        for (const auto& [z, v] : b->coeffs()) {
          for (const auto& [label, cls] : v.terms()) lhs.add_term(z, cls);
        }
      }
      RingLaurent rhs;
      if (const LaurentBlock* b = rel.series.find(index)) {
        for (const auto& [z, v] : b->coeffs()) {
          for (const auto& [label, cls] : v.terms()) rhs.add_term(z, D * cls * sign);
        }
      }
      t.expect(lhs == rhs, [&] { return index.str() + ": " + block_str(lhs) + " vs " + block_str(rhs); });
    });
    return t.done();
  });
}

CheckResult check_toric_agreement(const GeometryConfig& cfg) {
  return guarded("toric-agreement", [&] {
    Tally t("toric-agreement");
    if (std::find(cfg.toric_divisors.begin(), cfg.toric_divisors.end(), cfg.divisor) == cfg.toric_divisors.end()) {
      return t.skip("D = " + cfg.divisor.str() + " is not a toric divisor");
    }
    compare_series(t, i_toric_direct(cfg).series, i_root_stack(cfg).series, SectorPairingContext(cfg.divisor, cfg.r));
    return t.done();
  });
}

CheckResult check_ambient_restriction(const GeometryConfig& cfg) {
  return guarded("ambient-restriction", [&] {
    Tally t("ambient-restriction");
    const IFunction amb = i_ambient_tilde(cfg);
    const IFunction root = i_root_stack(cfg);
    const SectorPairingContext ctx(cfg.divisor, cfg.r);
    const std::size_t m = root.series.shape().curves;
    std::set<SeriesIndex> seen;
    for (const auto& [index, block] : amb.series.entries()) {
      const long n = index.d[m];
      const CurveClass d(std::vector<long>(index.d.coords().begin(), index.d.coords().begin() + static_cast<long>(m)));
      const long dd = intersect(cfg.divisor, d);
      if (n < dd) {
        t.expect(block.is_zero(), [&] { return index.str() + " should vanish: " + block_str(block); });
        continue;
      }
      if (n != dd || index.ell.back() != 0) continue;
      const SeriesIndex restricted{d, {}, std::vector<long>(index.ell.begin(), index.ell.end() - 1)};
      seen.insert(restricted);
      const LaurentBlock a = normalized(&block, ctx);
      const LaurentBlock b = normalized(root.series.find(restricted), ctx);
      t.expect(agree(a, b), [&] { return mismatch(index, a, b); });
    }
    for (const auto& [index, block] : root.series.entries()) {
      t.expect(seen.count(index) > 0, [&] { return index.str() + " has no ambient counterpart"; });
    }
    return t.done();
  });
}

CheckResult check_lambda_limit(const GeometryConfig& cfg) {
  return guarded("lambda-limit", [&] {
    Tally t("lambda-limit");
    GeometryConfig formal = cfg;
    formal.lambda_mode = LambdaMode::Formal;
    const IFunction tw = i_gerbe_twisted(formal);
    GeometryConfig plain = cfg;
    plain.lambda_mode = LambdaMode::Off;
    const IFunction root = i_root_stack(plain);
    const SectorPairingContext ctx(cfg.divisor, cfg.r);
    for_each_index(tw.series, root.series, [&](const SeriesIndex& index) {
      const LaurentBlock* b = tw.series.find(index);
      const LaurentBlock limit = b ? lambda_zero(*b, cfg.ring) : LaurentBlock();
      const LaurentBlock lhs = normalized(&limit, ctx);
      const LaurentBlock rhs = normalized(root.series.find(index), ctx);
      t.expect(agree(lhs, rhs), [&] { return mismatch(index, lhs, rhs); });
    });
    return t.done();
  });
}

CheckResult check_stabilization(const GeometryConfig& cfg, const std::vector<long>& r_list, bool extended) {
  const std::string name = extended ? "stabilization-extended" : "stabilization";
  return guarded(name, [&] {
    GeometryConfig c = cfg;
    if (extended) c.S = extension_or_default(cfg);
    const CorrespondenceReport report = correspondence_table(c, r_list, extended);
    CheckResult out{name, report.all_equal() ? CheckStatus::Pass : CheckStatus::Fail, report.first_failure.value_or(""),
                    static_cast<long>(report.rows.size())};
    return out;
  });
}

CheckResult check_round_trip(const GeometryConfig& cfg, long order) {
  return guarded("mirror-round-trip", [&] {
    GeometryConfig c = cfg;
    c.S = extension_or_default(cfg);
    c.bounds.kmax = std::max(c.bounds.kmax, order);
    for (auto& d : c.bounds.dmax) d = std::max(d, order);
    c.bounds.log_max = 0;
    const SplitResult sp = split(i_relative_extended(c), order);
    const SubstitutionTable table = invert_map(sp.tau, order);
    const auto failure = round_trip_failure(table);
    return CheckResult{"mirror-round-trip", failure ? CheckStatus::Fail : CheckStatus::Pass, failure.value_or(""),
                       static_cast<long>(sp.tau.components.terms().size())};
  });
}

CheckResult check_j_normalization(const GeometryConfig& cfg) {
  return guarded("j-normalization", [&] {
    Tally t("j-normalization");
    const long order = default_order(cfg, false);
    std::vector<Theory> theories{Theory::Absolute, Theory::Relative, Theory::Local};
    if (cfg.r > threshold(cfg)) theories.push_back(Theory::RootStack);
    for (Theory theory : theories) {
      const PipelineResult res = run_invariants(theory, cfg, order);
      const Exponent origin(res.j.series.nvars(), 0);
      for (const auto& [e, block] : res.j.series.terms()) {
        for (const auto& [z, v] : block.coeffs()) {
          const bool allowed = z < 0 || (z == 1 && e == origin);
          t.expect(allowed, [&] {
            return std::string(theory_name(theory)) + ": z^" + std::to_string(z) + " term " + v.str() + " at q-degree " +
                   CurveClass(e).str();
          });
        }
      }
    }
    return t.done();
  });
}

CheckResult check_projective_descendants(const GeometryConfig& cfg) {
  return guarded("projective-descendants", [&] {
    Tally t("projective-descendants");
    if (cfg.j_mode != JMode::ProjectiveSpace) return t.skip("base is not a projective space");
    const int n = cfg.ring->complex_dimension();
    const long order = default_order(cfg, false);
    const PipelineResult res = run_invariants(Theory::Absolute, cfg, order);
    const RingElement pt = RingElement::basis(cfg.ring, cfg.ring->dim() - 1);
    for (long d = 1; d <= order; ++d) {
      const long psi = (n + 1) * d - 2;
      const Rational expected = pow(factorial(d), n + 1).inverse();
      std::optional<Rational> found;
      for (const auto& rec : res.records) {
        if (rec.d == CurveClass({d}) && rec.psi_power == psi && rec.insertion == pt) found = rec.value;
      }
      t.expect(found && *found == expected, [&] {
        return "<pt psi^" + std::to_string(psi) + ">_" + std::to_string(d) + " = " + (found ? found->str() : "missing") +
               ", expected " + expected.str();
      });
    }
    return t.done();
  });
}

CheckResult check_relative_local_transfer(const GeometryConfig& cfg) {
  return guarded("relative-local-transfer", [&] {
    Tally t("relative-local-transfer");
    const long order = default_order(cfg, false);
    const auto rel = record_map(run_invariants(Theory::Relative, cfg, order).records);
    const auto loc = record_map(run_invariants(Theory::Local, cfg, order).records);
    std::set<std::tuple<CurveClass, std::string, long>> keys;
    for (const auto& [k, v] : rel) keys.insert(k);
    for (const auto& [k, v] : loc) keys.insert(k);
    for (const auto& key : keys) {
      const long dd = intersect(cfg.divisor, std::get<0>(key));
      if (dd == 0) continue;
      const Rational factor = Rational(dd % 2 == 1 ? dd : -dd);  // (-1)^{D.d - 1} D.d
      const Rational lhs = rel.count(key) ? rel.at(key) : Rational();
      const Rational rhs = loc.count(key) ? loc.at(key) * factor : Rational();
      t.expect(lhs == rhs, [&] { return record_key(key) + ": relative " + lhs.str() + ", transferred local " + rhs.str(); });
    }
    return t.done();
  });
}

CheckResult check_root_invariant_stabilization(const GeometryConfig& cfg, const std::vector<long>& r_list) {
  return guarded("root-invariant-stabilization", [&] {
    Tally t("root-invariant-stabilization");
    const long order = default_order(cfg, false);
    const auto rel = record_map(run_invariants(Theory::Relative, cfg, order).records);
    bool any = false;
    for (long r : r_list) {
      if (r <= threshold(cfg)) continue;
      any = true;
      GeometryConfig c = cfg;
      c.r = r;
      c.S.clear();
      const auto root = record_map(run_invariants(Theory::RootStack, c, order).records);
      std::set<std::tuple<CurveClass, std::string, long>> keys;
      for (const auto& [k, v] : rel) keys.insert(k);
      for (const auto& [k, v] : root) keys.insert(k);
      for (const auto& key : keys) {
        const Rational lhs = root.count(key) ? root.at(key) * rho_minus_factor(r, 0) : Rational();
        const Rational rhs = rel.count(key) ? rel.at(key) : Rational();
        t.expect(lhs == rhs, [&] {
          return "r = " + std::to_string(r) + ", " + record_key(key) + ": root stack " + lhs.str() + ", relative " + rhs.str();
        });
      }
    }
    if (!any) return t.skip("no r in the list exceeds max D.d = " + std::to_string(threshold(cfg)));
    return t.done();
  });
}

std::vector<CheckResult> verify_suite(const GeometryConfig& cfg, const std::vector<long>& r_list) {
  std::vector<long> rs = r_list;
  const std::vector<long> S = extension_or_default(cfg);
  if (rs.empty()) {
    const long base = threshold(cfg) + *std::max_element(S.begin(), S.end()) + 1;
    rs = {std::max(cfg.r, base), std::max(cfg.r, base) + 1};
  }
  GeometryConfig at_r = cfg;
  at_r.r = rs.front();

  std::vector<CheckResult> out;
  out.push_back(check_pairing_structure(cfg, rs.front()));
  out.push_back(check_gamma_inverse_law(cfg.ring, 50, 20240601u));
  out.push_back(check_expand_multiplicative(cfg.ring, 30, 20240602u));
  out.push_back(check_exp_divisor_relation(cfg));
  out.push_back(check_extension_zero(at_r));
  out.push_back(check_local_sign(cfg));
  out.push_back(check_toric_agreement(at_r));
  out.push_back(check_ambient_restriction(at_r));
  out.push_back(check_lambda_limit(at_r));
  out.push_back(check_stabilization(cfg, rs, false));
  out.push_back(check_stabilization(cfg, rs, true));
  out.push_back(check_round_trip(cfg, default_order(cfg, false)));
  out.push_back(check_j_normalization(at_r));
  out.push_back(check_projective_descendants(cfg));
  out.push_back(check_relative_local_transfer(cfg));
  out.push_back(check_root_invariant_stabilization(cfg, rs));
  return out;
}

}  // namespace rootmirror
