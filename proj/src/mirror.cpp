#include "rootmirror/mirror.hpp"

#include <algorithm>
#include <set>

#include "rootmirror/error.hpp"

namespace rootmirror {

namespace {

using RingSeries = TruncatedSeries<RingLaurent>;

template <class V, class Mul>
TruncatedSeries<V> series_exp(const TruncatedSeries<V>& s, const V& one, Mul&& mul) {
  TruncatedSeries<V> out(s.nvars(), s.order());
  out.add_term(Exponent(s.nvars(), 0), one);
  TruncatedSeries<V> term = out;
  for (long n = 1; n <= s.order(); ++n) {
    term = series_product(term, s, mul);
    term *= Rational(1, n);
    if (term.is_zero()) break;
    out += term;
  }
  return out;
}

RingLaurent ring_mul(const RingLaurent& a, const RingLaurent& b) { return a * b; }
LaurentBlock act_mul(const RingLaurent& a, const LaurentBlock& b) { return act(a, b); }

std::string exponent_text(const Exponent& e) {
  std::string out = "(";
  for (std::size_t i = 0; i < e.size(); ++i) out += (i ? "," : "") + std::to_string(e[i]);
  return out + ")";
}

Exponent concat(const CurveClass& d, const std::vector<long>& k) {
  Exponent e = d.coords();
  e.insert(e.end(), k.begin(), k.end());
  return e;
}

// Drops the extension slots from a series in (Q, xhat) evaluated at xhat = 0.
ScalarSeries at_zero_extension(const ScalarSeries& s, std::size_t curves) {
  ScalarSeries out(curves, s.order());
  for (const auto& [e, c] : s.terms()) {
    if (std::any_of(e.begin() + static_cast<long>(curves), e.end(), [](long v) { return v != 0; })) continue;
    out.add_term(Exponent(e.begin(), e.begin() + static_cast<long>(curves)), c);
  }
  return out;
}

}  // namespace

std::string invariant_theory_name(InvariantTheory t) {
  switch (t) {
    case InvariantTheory::RootStack:
      return "root-stack";
    case InvariantTheory::Relative:
      return "relative";
    case InvariantTheory::Absolute:
      return "absolute";
    case InvariantTheory::Local:
      return "local";
  }
  return "unknown";
}

SectorLabel TheoryContext::degree_sector(const CurveClass& d) const {
  const long dd = intersect(pairing.divisor(), d);
  switch (invariants) {
    case InvariantTheory::RootStack:
      return SectorLabel::age_of(Rational(-dd, *pairing.r()));
    case InvariantTheory::Relative:
      return SectorLabel::contact(-dd);
    default:
      return SectorLabel::age(0);
  }
}

TheoryContext theory_context(Theory theory, const GeometryConfig& cfg) {
  switch (theory) {
    case Theory::RootStack:
    case Theory::RootStackExtended:
    case Theory::ToricDirect:
      return {theory, InvariantTheory::RootStack, SectorPairingContext(cfg.divisor, cfg.r), cfg.r};
    case Theory::Relative:
    case Theory::RelativeExtended:
      return {theory, InvariantTheory::Relative, SectorPairingContext(cfg.divisor, std::nullopt), 1};
    case Theory::Absolute:
      return {theory, InvariantTheory::Absolute, SectorPairingContext(cfg.divisor, 1), 1};
    case Theory::Local:
      return {theory, InvariantTheory::Local, SectorPairingContext(cfg.divisor, 1), 1};
    default:
      break;
  }
  fail(ErrorKind::Mode, "no invariant extraction for the " + std::string(theory_name(theory)) + " I-function");
}

BlockSeries ell_zero_series(const IFunction& i, long order) {
  const auto& shape = i.series.shape();
  const auto& bounds = i.series.bounds();
  for (std::size_t j = 0; j < bounds.dmax.size(); ++j) {
    if (bounds.dmax[j] < order) {
      fail(ErrorKind::Bounds, "order " + std::to_string(order) + " exceeds the degree bound " +
                                  std::to_string(bounds.dmax[j]) + " of Mori generator " + std::to_string(j + 1));
    }
  }
  if (shape.extensions > 0 && bounds.kmax < order) {
    fail(ErrorKind::Bounds, "order " + std::to_string(order) + " exceeds kmax = " + std::to_string(bounds.kmax));
  }
  BlockSeries out(shape.curves + shape.extensions, order);
  for (const auto& [index, block] : i.series.entries()) {
    if (index.ell_total() != 0) continue;
    out.add_term(concat(index.d, index.k), block);
  }
  return out;
}

SplitResult split(const IFunction& i, long order) {
  BlockSeries full = ell_zero_series(i, order);
  const std::size_t nvars = full.nvars();
  const SectorLabel unit_sector = SectorLabel::untwisted(i.kind);
  const StateVector unit(unit_sector, RingElement::one(i.ring));
  const Exponent origin(nvars, 0);

  MirrorMap tau;
  tau.curves = i.series.shape().curves;
  tau.directions = i.directions;
  tau.components = StateSeries(nvars, order);
  BlockSeries tail(nvars, order);
  for (const auto& [e, block] : full.terms()) {
    if (!block.known(0)) {
      fail(ErrorKind::Window, "expansion window at " + exponent_text(e) + " starts above z^0");
    }
    LaurentBlock negative;
    negative.set_floor(block.floor());
    for (const auto& [z, v] : block.coeffs()) {
      if (z < 0) {
        negative.add_term(z, v);
      } else if (z == 0) {
        tau.components.add_term(e, v);
      } else if (!(e == origin && z == 1 && v == unit)) {
        fail(ErrorKind::ConeSliceOutOfContract, "coefficient of z^" + std::to_string(z) + " at monomial " +
                                                    exponent_text(e) + " is " + v.str() +
                                                    "; only z*1 at the origin is supported (no Birkhoff factorization)");
      }
    }
    if (e == origin) {
      const StateVector* top = block.find(1);
      if (!top || !(*top == unit)) {
        fail(ErrorKind::ConeSliceOutOfContract, "the origin coefficient does not start with z*1");
      }
    }
    tail.add_term(e, negative);
  }
  return {std::move(tau), std::move(tail), std::move(full)};
}

JFunction assemble_j(const IFunction& i, const TheoryContext& ctx, long order) {
  SplitResult sp = split(i, order);
  const SubstitutionTable table = invert_map(sp.tau, order);
  const std::size_t m = sp.tau.curves;
  const RingPtr& ring = i.ring;
  const RingElement& D = ctx.pairing.divisor();
  if (D.ring() != ring) fail(ErrorKind::RingMismatch, "theory context and I-function use different rings");
  const SectorLabel unit_sector = SectorLabel::untwisted(i.kind);

  // I(Q, x(Q, xhat = 0)); the Novikov variables are the only ones left.
  std::vector<ScalarSeries> subs;
  for (std::size_t j = 0; j < m; ++j) subs.push_back(scalar_variable(m, order, j));
  for (const auto& inv : table.inverse) subs.push_back(at_zero_extension(inv, m));
  const BlockSeries H = compose(sp.full, subs);

  const Exponent origin(m, 0);
  const LaurentBlock unit_block = LaurentBlock::term(1, StateVector(unit_sector, RingElement::one(ring)));
  {
    const LaurentBlock* h0 = H.find(origin);
    if (!h0 || !(*h0 == unit_block)) fail(ErrorKind::ConeSliceOutOfContract, "degree-zero coefficient is not z*1");
  }

  // Remaining z^0 terms: untwisted shifts u and sector shifts s.
  RingSeries u(m, order);
  ScalarSeries s(m, order);
  for (const auto& [e, block] : H.terms()) {
    if (e == origin) continue;
    const StateVector* v = block.find(0);
    if (!v) continue;
    const CurveClass d(e);
    for (const auto& [label, cls] : v->terms()) {
      if (label.is_untwisted()) {
        if (cls.max_degree() > 2) {
          fail(ErrorKind::UnsupportedDirection, "untwisted class " + cls.str() + " of degree above 2 at d = " + d.str());
        }
        u.add_term(e, RingLaurent::term(0, cls));
      } else if (std::find(i.directions.begin(), i.directions.end(), label) != i.directions.end()) {
        fail(ErrorKind::NotInvertible, "parameter sector " + label.str() + " keeps a z^0 term at d = " + d.str());
      } else if (label == ctx.degree_sector(d) && cls == RingElement::scalar(ring, cls[0])) {
        s.add_term(e, cls[0] / Rational(ctx.nu));
      } else {
        fail(ErrorKind::UnsupportedDirection, "z^0 term " + cls.str() + " on sector " + label.str() + " at d = " + d.str());
      }
    }
  }

  // Sector shifts compose by adding degrees, which matches the root-stack
  // sectors only while no D.d in the inversion range wraps around r.
  if (!s.is_zero() && ctx.invariants == InvariantTheory::RootStack) {
    for (const auto& d : curve_box(std::vector<long>(m, order))) {
      if (d.total() > order) continue;
      if (intersect(D, d) >= *ctx.pairing.r()) {
        fail(ErrorKind::UnsupportedDirection, "sector shift needs r > D.d = " + std::to_string(intersect(D, d)) +
                                                  " at d = " + d.str() + "; attach parameters with S instead");
      }
    }
  }

  const RingLaurent one = RingLaurent::term(0, RingElement::one(ring));
  const RingSeries exp_u = series_exp(u.map_values([](const RingLaurent& b) { return b.shifted(-1); }), one, ring_mul);

  // z (e^{sD/z} - 1) / D = sum_{m >= 1} s^m D^{m-1} z^{1-m} / m!
  RingSeries push(m, order);
  {
    ScalarSeries power = scalar_constant(m, order, Rational(1));
    for (long k = 1; k <= order; ++k) {
      power = power * s;
      if (power.is_zero()) break;
      const RingLaurent shape = RingLaurent::term(static_cast<int>(1 - k), pow(D, static_cast<int>(k - 1)));
      for (const auto& [e, c] : power.terms()) push.add_term(e, shape * (c / factorial(k)));
    }
  }
  const RingSeries pushed = series_product(exp_u, push, ring_mul);

  BlockSeries W = H;
  for (const auto& [e, b] : exp_u.terms()) W.add_term(e, -place_in_sector(b.shifted(1), unit_sector));
  for (const auto& [e, b] : pushed.terms()) {
    const SectorLabel target = ctx.degree_sector(CurveClass(e));
    RingLaurent embedded = b * Rational(ctx.nu);
    if (!target.is_untwisted()) {
      embedded = embedded.map_values([&](const RingElement& c) { return ctx.pairing.restriction().reduce(c); });
    }
    W.add_term(e, -place_in_sector(embedded, target));
  }

  RingSeries shift = u;
  for (const auto& [e, c] : s.terms()) shift.add_term(e, RingLaurent::term(0, D * c));
  const RingSeries exp_shift =
      series_exp(shift.map_values([](const RingLaurent& b) { return -b.shifted(-1); }), one, ring_mul);
  // A sector shift translates sectors: the part of V at Q^d belongs to the
  // sector of d. That reading is only unambiguous when W itself is graded so.
  if (!s.is_zero()) {
    for (const auto& [e, b] : W.terms()) {
      if (e == origin) continue;
      const SectorLabel target = ctx.degree_sector(CurveClass(e));
      for (const auto& [z, v] : b.coeffs()) {
        for (const auto& [label, cls] : v.terms()) {
          if (label != target || target.is_untwisted()) {
            fail(ErrorKind::UnsupportedDirection, "sector shift with a component on " + label.str() + " at Q^" +
                                                      exponent_text(e) + "; expected only " + target.str());
          }
        }
      }
    }
  }
  const BlockSeries V = series_product(exp_shift, W, act_mul);
  for (const auto& [e, b] : V.terms()) {
    if (!b.coeffs().empty() && b.coeffs().rbegin()->first >= 0) {
      fail(ErrorKind::ConeSliceOutOfContract, "after removing the mirror shift a z^" +
                                                  std::to_string(b.coeffs().rbegin()->first) + " term remains at " +
                                                  exponent_text(e));
    }
  }

  // q_j = Q_j exp(phi_j(Q)) with phi_j the pairing of the divisor part of the shift with generator j.
  std::vector<ScalarSeries> phi(m, ScalarSeries(m, order));
  for (const auto& [e, b] : shift.terms()) {
    const RingElement* c = b.find(0);
    if (!c) continue;
    const RationalVector coords = divisor_coordinates(c->component(2));
    for (std::size_t j = 0; j < m; ++j) {
      Rational total;
      for (std::size_t k = 0; k < coords.size(); ++k) total += coords[k] * Rational(ring->pairing(k, j));
      phi[j].add_term(e, total);
    }
  }
  std::vector<ScalarSeries> Q;
  for (std::size_t j = 0; j < m; ++j) Q.push_back(scalar_variable(m, order, j));
  const std::vector<ScalarSeries> q = Q;
  for (long pass = 0; pass <= order; ++pass) {
    std::vector<ScalarSeries> next;
    for (std::size_t j = 0; j < m; ++j) next.push_back(q[j] * exp(compose(phi[j], Q) * Rational(-1)));
    Q = std::move(next);
  }

  const BlockSeries in_q = compose(V, Q);
  JFunction out;
  out.series = BlockSeries(m, order);
  for (const auto& [e, b] : in_q.terms()) {
    // With a sector shift the coefficient of q^d belongs to the sector of d.
    const SectorLabel target = ctx.degree_sector(CurveClass(e));
    out.series.add_term(e, b.map_values([&](const StateVector& v) {
      if (s.is_zero()) return ctx.pairing.normalize(v);
      StateVector moved;
      for (const auto& [label, cls] : v.terms()) moved.add(target, cls);
      return ctx.pairing.normalize(moved);
    }));
  }
  out.series.add_term(origin, unit_block);
  out.parameter_space = i.directions;
  out.provenance = std::string(theory_name(i.theory)) + " I-function, inversion order " + std::to_string(order);
  out.steps = table.steps;
  out.novikov_inverse = std::move(Q);
  out.order = order;
  return out;
}

std::vector<InvariantRecord> extract_one_point(const JFunction& j, const TheoryContext& ctx) {
  std::vector<InvariantRecord> out;
  const auto& pc = ctx.pairing;
  const RingPtr& ring = pc.ring();
  for (const auto& [e, block] : j.series.terms()) {
    if (total_degree(e) == 0) continue;
    const CurveClass d(e);
    if (block.floor()) {
      fail(ErrorKind::Window, "J coefficient at q^" + d.str() + " is only known above z^" + std::to_string(*block.floor() - 1) +
                                  "; one-point extraction needs the complete expansion (leave bounds.z_min unset)");
    }
    for (auto it = block.coeffs().rbegin(); it != block.coeffs().rend(); ++it) {
      const int z = it->first;
      if (z >= 0) continue;
      const long psi = -z - 1;
      for (const auto& [label, cls] : it->second.terms()) {
        auto emit = [&](const SectorLabel& sector, const RingElement& b, const Rational& value) {
          if (!value.is_zero()) out.push_back({ctx.invariants, d, sector, b, psi, value});
        };
        switch (ctx.invariants) {
          case InvariantTheory::RootStack:
          case InvariantTheory::Relative: {
            const SectorLabel opp = label.opposite();
            for (const auto& b : pc.sector_basis(opp)) emit(opp, b, pair(StateVector(opp, b), StateVector(label, cls), pc));
            break;
          }
          case InvariantTheory::Absolute:
            for (std::size_t k = 0; k < ring->dim(); ++k) {
              const RingElement b = RingElement::basis(ring, k);
              emit(label, b, integrate(b * cls));
            }
            break;
          case InvariantTheory::Local: {
            const long dd = intersect(pc.divisor(), d);
            if (dd == 0) break;
            for (auto k : pc.restriction().image_basis()) {
              const RingElement b = RingElement::basis(ring, k);
              emit(label, b, -integrate(b * cls) / Rational(dd));
            }
            break;
          }
        }
      }
    }
  }
  return out;
}

std::optional<std::vector<long>> augmented_extension(const GeometryConfig& cfg) {
  std::set<long> S;
  for (const auto& d : curve_box(cfg.bounds.dmax)) {
    const long v = intersect(cfg.divisor, d);
    if (v == 0) continue;
    if (v >= cfg.r) return std::nullopt;
    S.insert(cfg.r - v);
  }
  return std::vector<long>(S.begin(), S.end());
}

long default_order(const GeometryConfig& cfg, bool extended) {
  long order = cfg.bounds.dmax.empty() ? 0 : *std::min_element(cfg.bounds.dmax.begin(), cfg.bounds.dmax.end());
  if (extended && !cfg.S.empty()) order = std::min(order, cfg.bounds.kmax);
  return order;
}

PipelineResult run_invariants(Theory theory, const GeometryConfig& cfg, long order) {
  GeometryConfig work = cfg;
  work.bounds.log_max = 0;
  PipelineResult out;
  Theory built = theory;
  if (theory == Theory::RootStack && cfg.S.empty()) {
    if (auto S = augmented_extension(cfg)) {
      work.S = *S;
      work.bounds.kmax = order;
      built = Theory::RootStackExtended;
      std::string list;
      for (long a : *S) list += (list.empty() ? "" : ",") + std::to_string(a);
      out.route = "root stack with parameters on sectors S={" + list + "}";
    }
  }
  if (out.route.empty()) out.route = std::string(theory_name(theory)) + " I-function";
  const IFunction i = build_ifunction(built, work);
  const TheoryContext ctx = theory_context(built, work);
  out.j = assemble_j(i, ctx, order);
  out.records = extract_one_point(out.j, ctx);
  return out;
}

}  // namespace rootmirror
