#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rootmirror/scalar_series.hpp"
#include "rootmirror/sectors.hpp"

namespace rootmirror {

using StateSeries = TruncatedSeries<StateVector>;

// The z^0 part of an I-function as a series in (Q_1..Q_m, x_1..x_s): the
// Novikov variables come first, then one variable per parameter direction.
struct MirrorMap {
  std::size_t curves = 0;
  std::vector<SectorLabel> directions;  // sector owned by each extension variable
  StateVector parameter;                // declared value at Q = x = 0
  StateSeries components{0, 0};

  std::size_t nvars() const { return curves + directions.size(); }
};

struct InversionStep {
  Exponent monomial;
  std::string direction;  // sector or class the term points along
  std::string role;       // parameter, correction, untwisted-shift or sector-shift
  Rational coefficient;
};

// The formal inverse of a mirror map together with the directions it does not
// eliminate. Series live in the same variables as the map; inverse series use
// the hatted target variables in the extension slots.
struct SubstitutionTable {
  std::size_t curves = 0;
  long order = 0;
  std::vector<SectorLabel> directions;
  std::vector<ScalarSeries> forward;   // xhat_i = x_i + forward_i(Q, x)
  std::vector<ScalarSeries> inverse;   // x_i = inverse_i(Q, xhat)
  std::map<std::size_t, ScalarSeries> untwisted_shift;  // coefficient of basis element b (degree <= 2)
  std::map<SectorLabel, ScalarSeries> sector_shift;     // identity class on a sector nobody owns
  std::vector<InversionStep> steps;
};

SubstitutionTable invert_map(const MirrorMap& tau, long order);

// Composes the forward map with the inverse; returns a witness for the first
// monomial where the composite differs from the identity.
std::optional<std::string> round_trip_failure(const SubstitutionTable& table);

// Substitution list Q_j -> Q_j, x_i -> inverse_i for use with compose().
std::vector<ScalarSeries> inverse_substitution(const SubstitutionTable& table);

}  // namespace rootmirror
