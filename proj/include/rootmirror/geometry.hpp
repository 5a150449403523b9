#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rootmirror/factored.hpp"
#include "rootmirror/laurent.hpp"
#include "rootmirror/ring.hpp"
#include "rootmirror/series.hpp"

namespace rootmirror {

enum class JMode { ProjectiveSpace, Toric, ExternalTable };
enum class LambdaMode { Off, Formal };

std::string jmode_name(JMode mode);

struct GeometryConfig {
  GeometryConfig(RingPtr base, RingElement d) : ring(std::move(base)), divisor(std::move(d)) {}

  std::string name = "custom";
  RingPtr ring;
  RingElement divisor;
  long r = 1;
  std::vector<long> S;
  SeriesBounds bounds;
  LambdaMode lambda_mode = LambdaMode::Off;
  int lambda_order = 2;  // lambda^{lambda_order + 1} = 0 in the formal twisted variant
  JMode j_mode = JMode::Toric;
  // Toric divisor classes; for P^n these are n + 1 copies of H.
  std::vector<RingElement> toric_divisors;
  // L^0 part of J_{X,d} (overall z included) for external-table mode.
  std::map<CurveClass, RingLaurent> external_j;
  long ambient_slack = 2;
  // Hypotheses the user asserts for the relative theory; recorded, never checked.
  bool asserted_divisor_nef = false;
  bool asserted_anticanonical_minus_divisor_nef = false;
};

// Hyperplane classes repeated as toric divisors: n + 1 copies of H for P^n and
// the same per factor for products of projective spaces.
std::vector<RingElement> standard_toric_divisors(const RingPtr& ring);

// (P^n, D = degree * H) with projective-space J and default bounds.
GeometryConfig projective_config(int n, long degree, long r = 1, long dmax = 3);

enum class ExtensionRule { None, RootStack, Relative };

// Checks nefness of D against the Mori generators and the range of S.
void validate(const GeometryConfig& cfg, ExtensionRule rule = ExtensionRule::None);

// Every curve class with 0 <= d_j <= dmax_j, in lexicographic order.
std::vector<CurveClass> curve_box(const std::vector<long>& dmax);
// Every k in Z_{>=0}^m with |k| <= kmax, in lexicographic order.
std::vector<std::vector<long>> extension_box(std::size_t m, long kmax);
// Every ell with |ell| <= cap.
std::vector<std::vector<long>> log_box(std::size_t m, long cap);

long max_intersection(const GeometryConfig& cfg);

// Base J-function coefficient J_{X,d}: kept factored for toric and projective
// bases, read from the table otherwise.
struct BaseJ {
  FactoredZFunction factored;
  std::optional<RingLaurent> table;
};

class BaseJProvider {
 public:
  explicit BaseJProvider(const GeometryConfig& cfg);

  JMode mode() const { return mode_; }
  // J_{X,d} at the L^0 stratum, over the base ring or (through `embed`) another ring.
  BaseJ coefficient(const CurveClass& d) const;
  BaseJ coefficient(const CurveClass& d, const RingPtr& target, RingElement (*embed)(const RingElement&, const RingPtr&)) const;

 private:
  const GeometryConfig* cfg_;
  JMode mode_;
};

// J_{X,d} on the untwisted sector at the log stratum ell, log prefactor included.
LaurentBlock j_base(const GeometryConfig& cfg, const CurveClass& d, const std::vector<long>& ell = {});

}  // namespace rootmirror
