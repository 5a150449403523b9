#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rootmirror/laurent.hpp"
#include "rootmirror/rational.hpp"
#include "rootmirror/ring.hpp"
#include "rootmirror/sectors.hpp"

namespace rootmirror {

// (cls + a z)^exponent with exponent = +1 or -1.
struct LinearFactor {
  RingElement cls;
  Rational a;
  int exponent = 1;

  friend bool operator==(const LinearFactor&, const LinearFactor&) = default;
};

// scalar * prefactor * z^z_power * product of linear factors, kept factored
// until a single expansion at z = infinity.
class FactoredZFunction {
 public:
  explicit FactoredZFunction(const RingPtr& ring);

  const RingPtr& ring() const { return prefactor_.ring(); }
  int z_power() const { return z_power_; }
  const Rational& scalar() const { return scalar_; }
  const RingElement& prefactor() const { return prefactor_; }
  const std::vector<LinearFactor>& factors() const { return factors_; }

  FactoredZFunction& times_z(int power);
  FactoredZFunction& times_scalar(const Rational& s);
  FactoredZFunction& times_class(const RingElement& cls);
  // Appends (cls + a z)^exponent; an inverse factor needs a != 0.
  FactoredZFunction& times_factor(const RingElement& cls, const Rational& a, int exponent);
  FactoredZFunction& operator*=(const FactoredZFunction& o);
  friend FactoredZFunction operator*(FactoredZFunction a, const FactoredZFunction& b) { return a *= b; }

  // Lowest z-exponent the full expansion can reach.
  int lowest_exponent() const;

  std::string str() const;

 private:
  int z_power_ = 0;
  Rational scalar_{1};
  RingElement prefactor_;
  std::vector<LinearFactor> factors_;
};

// prod_{<a>=<c>, a<=0}(cls + a z) / prod_{<a>=<c>, a<=c}(cls + a z) as a finite product.
FactoredZFunction gamma_ratio(const RingElement& cls, const Rational& c);
// prod_{a=1}^{n}(cls + a z).
FactoredZFunction ascending_product(const RingElement& cls, long n);

// Ring-valued expansion at z = infinity; z_min = nullopt expands completely.
RingLaurent expand_ring(const FactoredZFunction& f, std::optional<int> z_min = std::nullopt);
LaurentBlock expand(const FactoredZFunction& f, const SectorLabel& sector, std::optional<int> z_min = std::nullopt);

}  // namespace rootmirror
