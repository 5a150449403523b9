#include "rootmirror/mirror_map.hpp"

#include <algorithm>

namespace rootmirror {

namespace {

Exponent unit_exponent(std::size_t nvars, std::size_t i) {
  Exponent e(nvars, 0);
  e[i] = 1;
  return e;
}

// Q_j -> Q_j and extension slot i -> subs[i].
std::vector<ScalarSeries> with_extensions(std::size_t curves, std::size_t nvars, long order,
                                          const std::vector<ScalarSeries>& ext) {
  std::vector<ScalarSeries> out;
  out.reserve(curves + ext.size());
  for (std::size_t j = 0; j < curves; ++j) out.push_back(scalar_variable(nvars, order, j));
  out.insert(out.end(), ext.begin(), ext.end());
  return out;
}

void add_shift(std::map<std::size_t, ScalarSeries>& shifts, std::size_t key, std::size_t nvars, long order,
               const Exponent& e, const Rational& c) {
  auto it = shifts.try_emplace(key, nvars, order).first;
  it->second.add_term(e, c);
}

}  // namespace

SubstitutionTable invert_map(const MirrorMap& tau, long order) {
  if (order < 0) fail(ErrorKind::Bounds, "inversion order must be nonnegative");
  const std::size_t nvars = tau.nvars();
  if (tau.components.nvars() != nvars) fail(ErrorKind::Bounds, "mirror map series has the wrong number of variables");
  if (tau.components.order() < order) {
    fail(ErrorKind::Bounds, "mirror map is known to order " + std::to_string(tau.components.order()) +
                                " only, inversion requested to order " + std::to_string(order));
  }

  SubstitutionTable table;
  table.curves = tau.curves;
  table.order = order;
  table.directions = tau.directions;

  const Exponent origin(nvars, 0);
  const StateVector* constant = tau.components.find(origin);
  const StateVector actual = constant ? *constant : StateVector();
  if (!(actual == tau.parameter)) {
    fail(ErrorKind::NotInvertible, "constant term " + actual.str() + " differs from the declared parameter " +
                                       tau.parameter.str());
  }

  std::map<SectorLabel, std::size_t> owner;
  for (std::size_t i = 0; i < tau.directions.size(); ++i) {
    if (!owner.emplace(tau.directions[i], i).second) {
      fail(ErrorKind::NotInvertible, "two parameters share the direction " + tau.directions[i].str());
    }
    const Exponent e = unit_exponent(nvars, tau.curves + i);
    const StateVector* lin = tau.components.find(e);
    const bool identity = lin && *lin == StateVector(tau.directions[i], RingElement::one(lin->terms().begin()->second.ring()));
    if (!identity) {
      fail(ErrorKind::NotInvertible, "linear term of parameter " + std::to_string(i + 1) + " is " +
                                         (lin ? lin->str() : std::string("0")) + ", expected the identity on " +
                                         tau.directions[i].str());
    }
    table.steps.push_back({e, tau.directions[i].str(), "parameter", Rational(1)});
    table.forward.emplace_back(nvars, order);
  }

  for (const auto& [e, v] : tau.components.terms()) {
    const long deg = total_degree(e);
    if (deg == 0 || deg > order) continue;
    bool is_linear_parameter = false;
    for (std::size_t i = 0; i < tau.directions.size(); ++i) is_linear_parameter |= (e == unit_exponent(nvars, tau.curves + i));
    if (is_linear_parameter) continue;
    for (const auto& [label, cls] : v.terms()) {
      const RingPtr& ring = cls.ring();
      const bool scalar_identity = cls == RingElement::scalar(ring, cls[0]);
      if (auto it = owner.find(label); it != owner.end()) {
        if (!scalar_identity) {
          fail(ErrorKind::UnsupportedDirection, "class " + cls.str() + " on parameter sector " + label.str() +
                                                    " is not a multiple of the identity");
        }
        table.forward[it->second].add_term(e, cls[0]);
        table.steps.push_back({e, label.str(), "correction", cls[0]});
      } else if (label.is_untwisted()) {
        if (cls.max_degree() > 2) {
          fail(ErrorKind::UnsupportedDirection, "untwisted class " + cls.str() + " of degree above 2 in the mirror map");
        }
        for (std::size_t b = 0; b < ring->dim(); ++b) {
          if (cls[b].is_zero()) continue;
          add_shift(table.untwisted_shift, b, nvars, order, e, cls[b]);
          table.steps.push_back({e, ring->monomial(b).name, "untwisted-shift", cls[b]});
        }
      } else {
        if (!scalar_identity) {
          fail(ErrorKind::UnsupportedDirection, "class " + cls.str() + " on sector " + label.str() +
                                                    " is not a multiple of the identity");
        }
        auto it = table.sector_shift.try_emplace(label, nvars, order).first;
        it->second.add_term(e, cls[0]);
        table.steps.push_back({e, label.str(), "sector-shift", cls[0]});
      }
    }
  }

  // x = xhat - f(Q, x); every pass fixes one more order.
  std::vector<ScalarSeries> x;
  for (std::size_t i = 0; i < tau.directions.size(); ++i) x.push_back(scalar_variable(nvars, order, tau.curves + i));
  const std::vector<ScalarSeries> hats = x;
  for (long pass = 0; pass <= order && !x.empty(); ++pass) {
    const auto subs = with_extensions(tau.curves, nvars, order, x);
    std::vector<ScalarSeries> next;
    for (std::size_t i = 0; i < x.size(); ++i) next.push_back(hats[i] - compose(table.forward[i], subs));
    x = std::move(next);
  }
  table.inverse = std::move(x);
  return table;
}

std::vector<ScalarSeries> inverse_substitution(const SubstitutionTable& table) {
  const std::size_t nvars = table.curves + table.directions.size();
  return with_extensions(table.curves, nvars, table.order, table.inverse);
}

std::optional<std::string> round_trip_failure(const SubstitutionTable& table) {
  const std::size_t nvars = table.curves + table.directions.size();
  const auto subs = inverse_substitution(table);
  for (std::size_t i = 0; i < table.directions.size(); ++i) {
    ScalarSeries full = scalar_variable(nvars, table.order, table.curves + i) + table.forward[i];
    const ScalarSeries composite = compose(full, subs);
    const ScalarSeries identity = scalar_variable(nvars, table.order, table.curves + i);
    if (composite == identity) continue;
    const ScalarSeries diff = composite - identity;
    const auto& [e, c] = *diff.terms().begin();
    std::string mono;
    for (std::size_t k = 0; k < e.size(); ++k) mono += (k ? "," : "") + std::to_string(e[k]);
    return "parameter " + std::to_string(i + 1) + " differs at monomial (" + mono + ") by " + c.str();
  }
  return std::nullopt;
}

}  // namespace rootmirror
