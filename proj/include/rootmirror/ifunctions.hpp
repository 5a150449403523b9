#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rootmirror/factored.hpp"
#include "rootmirror/geometry.hpp"
#include "rootmirror/series.hpp"

namespace rootmirror {

enum class Theory {
  Absolute,
  RootStack,
  RootStackExtended,
  Relative,
  RelativeExtended,
  Ambient,
  ToricDirect,
  Local,
  GerbeJ,
  GerbeTwisted,
};

std::string_view theory_name(Theory t);
std::optional<Theory> parse_theory(std::string_view name);

// One coefficient before expansion: z-function, target sector, and whether
// the classes are read as restrictions to D.
struct CoefficientRecipe {
  SeriesIndex index;  // ell = 0
  SectorLabel sector;
  FactoredZFunction factored;
  std::optional<RingLaurent> base;  // J_{X,d} from an external table, multiplied after expansion
  bool restrict_to_divisor = false;
};

struct IFunction {
  Theory theory;
  RingPtr ring;  // coefficient ring (with lambda for the twisted variant)
  SectorLabel::Kind kind;
  std::vector<RingElement> log_classes;  // class multiplying each log-Novikov variable
  std::vector<SectorLabel> directions;   // sector of each extension variable
  std::vector<CoefficientRecipe> recipes;
  GradedSeries series;
};

// Expands one recipe at the log stratum ell.
LaurentBlock expand_recipe(const CoefficientRecipe& recipe, const std::vector<RingElement>& log_classes,
                           const std::vector<long>& ell, const DivisorRestriction& restriction,
                           std::optional<int> z_min);

IFunction i_absolute(const GeometryConfig& cfg);
IFunction i_root_stack(const GeometryConfig& cfg);
IFunction i_root_stack_extended(const GeometryConfig& cfg);
IFunction i_relative(const GeometryConfig& cfg);
IFunction i_relative_extended(const GeometryConfig& cfg);
IFunction i_ambient_tilde(const GeometryConfig& cfg);
IFunction i_toric_direct(const GeometryConfig& cfg);
IFunction i_local(const GeometryConfig& cfg);
IFunction i_gerbe_j(const GeometryConfig& cfg);
IFunction i_gerbe_twisted(const GeometryConfig& cfg);

IFunction build_ifunction(Theory theory, const GeometryConfig& cfg);

// lambda = 0 specialization of a twisted coefficient, read back on the base ring.
LaurentBlock lambda_zero(const LaurentBlock& block, const RingPtr& base);

}  // namespace rootmirror
