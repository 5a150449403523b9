#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rootmirror/rational.hpp"
#include "rootmirror/ring.hpp"

namespace rootmirror {

// A sector of one of the two state spaces: an orbifold age in [0, 1) or an
// integer contact order along the divisor.
class SectorLabel {
 public:
  enum class Kind { Age, Contact };

  static SectorLabel age(const Rational& f);
  // Sector of age <x>, the fractional part of x.
  static SectorLabel age_of(const Rational& x) { return age(x.frac()); }
  static SectorLabel contact(long i);
  static SectorLabel untwisted(Kind kind) { return kind == Kind::Age ? age(0) : contact(0); }

  Kind kind() const { return kind_; }
  bool is_untwisted() const { return kind_ == Kind::Age ? age_.is_zero() : contact_ == 0; }
  const Rational& age_value() const;
  long contact_value() const;
  // The sector paired against this one.
  SectorLabel opposite() const;

  std::string str() const;

  friend bool operator==(const SectorLabel&, const SectorLabel&) = default;
  friend std::strong_ordering operator<=>(const SectorLabel& a, const SectorLabel& b);

 private:
  SectorLabel(Kind kind, Rational age, long contact) : kind_(kind), age_(std::move(age)), contact_(contact) {}

  Kind kind_ = Kind::Age;
  Rational age_;
  long contact_ = 0;
};

class StateVector {
 public:
  StateVector() = default;
  StateVector(const SectorLabel& label, RingElement value);

  const std::map<SectorLabel, RingElement>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::optional<SectorLabel::Kind> kind() const;
  const RingElement* find(const SectorLabel& label) const;

  void add(const SectorLabel& label, const RingElement& value);
  StateVector& operator+=(const StateVector& o);
  StateVector& operator-=(const StateVector& o);
  StateVector& operator*=(const Rational& s);
  friend StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
  friend StateVector operator-(StateVector a, const StateVector& b) { return a -= b; }
  friend StateVector operator*(StateVector a, const Rational& s) { return a *= s; }
  StateVector operator-() const;
  friend bool operator==(const StateVector&, const StateVector&) = default;

  // Multiplies every sector's class by an ambient class.
  StateVector act(const RingElement& cls) const;
  // Applies f to every sector's class.
  template <class F>
  StateVector map_classes(F&& f) const {
    StateVector out;
    for (const auto& [label, value] : terms_) out.add(label, f(label, value));
    return out;
  }

  std::string str() const;

 private:
  std::map<SectorLabel, RingElement> terms_;
};

// Module product: one operand must be supported on the untwisted sector.
StateVector operator*(const StateVector& a, const StateVector& b);

// Ambient classes modulo the annihilator of D, which is how ambient classes
// restricted to D are represented. Reduction gives a canonical representative.
class DivisorRestriction {
 public:
  explicit DivisorRestriction(RingElement divisor);

  const RingElement& divisor() const { return divisor_; }
  RingElement reduce(const RingElement& cls) const;
  // Basis indices whose classes form a basis of the quotient.
  const std::vector<std::size_t>& image_basis() const { return image_basis_; }
  bool annihilates(const RingElement& cls) const { return reduce(cls).is_zero(); }

 private:
  RingElement divisor_;
  RationalMatrix kernel_rows_;  // reduced echelon basis of ann(D)
  std::vector<std::size_t> kernel_pivots_;
  std::vector<std::size_t> image_basis_;
};

class SectorPairingContext {
 public:
  // r = nullopt selects the relative state space.
  SectorPairingContext(RingElement divisor, std::optional<long> r);

  const RingPtr& ring() const { return divisor_.ring(); }
  const RingElement& divisor() const { return divisor_; }
  std::optional<long> r() const { return r_; }
  bool is_relative() const { return !r_.has_value(); }
  const DivisorRestriction& restriction() const { return restriction_; }

  // Canonical form of a vector: classes on nonzero sectors are reduced modulo ann(D).
  StateVector normalize(const StateVector& v) const;
  // Basis of classes carried by a sector (full basis on the untwisted sector).
  std::vector<RingElement> sector_basis(const SectorLabel& label) const;

 private:
  RingElement divisor_;
  std::optional<long> r_;
  DivisorRestriction restriction_;
};

Rational pair_relative(const StateVector& u, const StateVector& v, const SectorPairingContext& ctx);
Rational pair_root_stack(const StateVector& u, const StateVector& v, const SectorPairingContext& ctx);
// Dispatches on the context kind.
Rational pair(const StateVector& u, const StateVector& v, const SectorPairingContext& ctx);

// Relabels a root-stack coefficient at curve class d with total extended contact
// `extension_contribution` onto the relative state space. A negative target
// contact order carries the factor 1/r, so that r*1 on that sector becomes [1].
StateVector root_to_relative(const StateVector& v, const SectorPairingContext& ctx, const CurveClass& d,
                             long extension_contribution);

// r^{rho_-}, the scaling between root-stack and relative invariants with rho_-
// negative-contact markings.
Rational rho_minus_factor(long r, int rho_minus);

}  // namespace rootmirror
