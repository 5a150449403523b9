#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rootmirror/linalg.hpp"
#include "rootmirror/rational.hpp"

namespace rootmirror {

struct Monomial {
  std::string name;
  int degree = 0;  // real cohomological degree (a divisor has degree 2)
};

using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

// Explicit description of a graded ring. Basis element 0 must be the unit.
struct RingTableSpec {
  struct Product {
    std::size_t left = 0;
    std::size_t right = 0;
    SparseRow terms;
  };
  std::vector<Monomial> basis;
  std::vector<Product> products;  // unlisted products vanish; products with the unit are implicit
  std::vector<Rational> integral;  // integration functional on each basis element
  std::vector<RationalVector> divisors;
  std::vector<std::vector<long>> curve_pairings;  // divisor i against curve generator j
};

class BaseRing;
using RingPtr = std::shared_ptr<const BaseRing>;

class BaseRing {
 public:
  // Validates commutativity, associativity, grading, top-degree integration and
  // nilpotency of every divisor class.
  static RingPtr from_table(RingTableSpec spec, std::string name);

  const std::string& name() const { return name_; }
  std::size_t dim() const { return basis_.size(); }
  const Monomial& monomial(std::size_t i) const { return basis_.at(i); }
  std::optional<std::size_t> find(const std::string& monomial_name) const;
  int top_degree() const { return top_degree_; }
  int complex_dimension() const { return top_degree_ / 2; }

  const SparseRow& product(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }
  const Rational& integral(std::size_t i) const { return integral_.at(i); }

  std::size_t num_divisors() const { return divisors_.size(); }
  const RationalVector& divisor_coefficients(std::size_t i) const { return divisors_.at(i); }
  std::size_t num_curve_generators() const { return num_curves_; }
  long pairing(std::size_t divisor, std::size_t curve) const { return pairings_.at(divisor).at(curve); }

  // Dimensions of the tensor factors when the ring was built by make_product.
  const std::vector<std::size_t>& factor_dims() const { return factor_dims_; }

 private:
  friend RingPtr make_product(const std::vector<RingPtr>& factors);
  BaseRing() = default;

  std::string name_;
  std::vector<Monomial> basis_;
  std::vector<SparseRow> table_;
  std::vector<Rational> integral_;
  int top_degree_ = 0;
  std::vector<RationalVector> divisors_;
  std::vector<std::vector<long>> pairings_;
  std::size_t num_curves_ = 0;
  std::vector<std::size_t> factor_dims_;
};

class RingElement {
 public:
  explicit RingElement(RingPtr ring);
  RingElement(RingPtr ring, RationalVector coeffs);

  static RingElement zero(const RingPtr& ring) { return RingElement(ring); }
  static RingElement one(const RingPtr& ring);
  static RingElement scalar(const RingPtr& ring, const Rational& value);
  static RingElement basis(const RingPtr& ring, std::size_t i);
  static RingElement basis(const RingPtr& ring, const std::string& monomial_name);
  static RingElement divisor(const RingPtr& ring, std::size_t i);

  const RingPtr& ring() const { return ring_; }
  const RationalVector& coefficients() const { return c_; }
  const Rational& operator[](std::size_t i) const { return c_.at(i); }

  bool is_zero() const;
  std::optional<int> homogeneous_degree() const;
  RingElement component(int degree) const;
  int max_degree() const;  // -1 for zero

  RingElement& operator+=(const RingElement& o);
  RingElement& operator-=(const RingElement& o);
  RingElement& operator*=(const Rational& s);
  friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
  friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
  friend RingElement operator*(RingElement a, const Rational& s) { return a *= s; }
  friend RingElement operator*(const Rational& s, RingElement a) { return a *= s; }
  RingElement operator-() const;
  friend RingElement operator*(const RingElement& a, const RingElement& b);
  friend bool operator==(const RingElement& a, const RingElement& b);

  std::string str() const;

 private:
  RingPtr ring_;
  RationalVector c_;
};

RingElement pow(const RingElement& base, int exponent);
Rational integrate(const RingElement& a);
RingElement mul(const RingElement& a, const RingElement& b);

// Smallest k with cls^k = 0, or nullopt when cls is not nilpotent.
std::optional<int> nilpotency_index(const RingElement& cls);

class CurveClass {
 public:
  CurveClass() = default;
  explicit CurveClass(std::vector<long> coords);
  static CurveClass zero(std::size_t generators) { return CurveClass(std::vector<long>(generators, 0)); }

  std::size_t size() const { return c_.size(); }
  long operator[](std::size_t i) const { return c_.at(i); }
  const std::vector<long>& coords() const { return c_; }
  long total() const;
  bool is_zero() const { return total() == 0; }
  std::string str() const;

  friend CurveClass operator+(const CurveClass& a, const CurveClass& b);
  friend auto operator<=>(const CurveClass&, const CurveClass&) = default;
  friend bool operator==(const CurveClass&, const CurveClass&) = default;

 private:
  std::vector<long> c_;
};

// Coordinates of a degree-2 class in the ring's divisor basis.
RationalVector divisor_coordinates(const RingElement& cls);
Rational intersect_rational(const RingElement& cls, const CurveClass& d);
long intersect(const RingElement& cls, const CurveClass& d);
bool is_nef(const RingElement& cls);

RingPtr make_projective_space(int n, const std::string& variable = "H");
RingPtr make_product(const std::vector<RingPtr>& factors);
RingPtr make_table_ring(const RingTableSpec& spec, const std::string& name = "table");
// Q[v]/(v^{max_power+1}) with v of degree 2, used for a formal equivariant parameter.
RingPtr make_truncated_line(const std::string& variable, int max_power);

// Component of `elem`, an element of a two-factor product ring, along basis
// element `second_index` of the second factor, as an element of `first`.
RingElement product_slice(const RingElement& elem, const RingPtr& first, std::size_t second_index);
// Image of `elem` under first-factor inclusion into a two-factor product ring.
RingElement product_embed_first(const RingElement& elem, const RingPtr& product);
// Basis element `second_index` of the second factor inside a two-factor product ring.
RingElement product_second_basis(const RingPtr& product, std::size_t second_index);

}  // namespace rootmirror
