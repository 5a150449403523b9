#include <doctest.h>

#include <functional>

#include "rootmirror/error.hpp"
#include "rootmirror/linalg.hpp"
#include "rootmirror/rational.hpp"
#include "rootmirror/ring.hpp"

using namespace rootmirror;

namespace {

RingElement H(const RingPtr& ring, int power = 1) { return pow(RingElement::divisor(ring, 0), power); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Config;
}

}  // namespace

TEST_CASE("rationals parse and print as p/q") {
  CHECK(Rational::parse("135/4") == Rational(135, 4));
  CHECK(Rational::parse(" -6/8 ").str() == "-3/4");
  CHECK(Rational::parse("7").str() == "7");
  CHECK(Rational(252252, 5).str() == "252252/5");
  CHECK(kind_of([] { Rational::parse("1/0"); }) == ErrorKind::Parse);
  CHECK(kind_of([] { Rational::parse("1/-2"); }) == ErrorKind::Parse);
  CHECK(kind_of([] { Rational::parse("x"); }) == ErrorKind::Parse);
  CHECK(kind_of([] { (void)(Rational(1) / Rational(0)); }) == ErrorKind::Domain);
}

TEST_CASE("rational floor, fractional part and factorial") {
  CHECK(Rational(-3, 5).floor() == Rational(-1));
  CHECK(Rational(-3, 5).frac() == Rational(2, 5));
  CHECK(Rational(7, 3).frac() == Rational(1, 3));
  CHECK(factorial(5) == Rational(120));
  CHECK(pow(Rational(2, 3), 3) == Rational(8, 27));
}

TEST_CASE("projective plane relations") {
  auto p2 = make_projective_space(2);
  REQUIRE(p2->dim() == 3);
  CHECK(p2->monomial(1).name == "H");
  CHECK(H(p2) * H(p2) == H(p2, 2));
  CHECK(mul(H(p2), H(p2, 2)).is_zero());
  CHECK(integrate(H(p2, 2)) == Rational(1));
  CHECK(integrate(H(p2, 2) * Rational(6)) == Rational(6));
  CHECK(intersect(H(p2) * Rational(3), CurveClass({1})) == 3);
  CHECK(intersect(H(p2) * Rational(3), CurveClass({2})) == 6);
  CHECK(p2->complex_dimension() == 2);
}

TEST_CASE("projective three-space relations") {
  auto p3 = make_projective_space(3);
  CHECK((H(p3, 3) * H(p3)).is_zero());
  CHECK(integrate(H(p3, 3)) == Rational(1));
  CHECK(intersect(H(p3), CurveClass({1})) == 1);
}

TEST_CASE("invalid dimensions are rejected") {
  CHECK(kind_of([] { make_projective_space(0); }) == ErrorKind::InvalidDimension);
  CHECK(kind_of([] { make_product({}); }) == ErrorKind::InvalidDimension);
}

TEST_CASE("product of projective lines") {
  auto ring = make_product({make_projective_space(1, "H1"), make_projective_space(1, "H2")});
  REQUIRE(ring->dim() == 4);
  const RingElement h1 = RingElement::divisor(ring, 0);
  const RingElement h2 = RingElement::divisor(ring, 1);
  CHECK((h1 * h1).is_zero());
  CHECK((h2 * h2).is_zero());
  CHECK(integrate(h1 * h2) == Rational(1));
  CHECK(intersect(h1, CurveClass({0, 1})) == 0);
  CHECK(intersect(h1 + h2, CurveClass({1, 1})) == 2);
}

TEST_CASE("intersection needs a degree-2 class") {
  auto p2 = make_projective_space(2);
  CHECK(kind_of([&] { intersect(H(p2, 2), CurveClass({1})); }) == ErrorKind::Grading);
  CHECK(kind_of([&] { intersect(RingElement::one(p2), CurveClass({1})); }) == ErrorKind::Grading);
}

TEST_CASE("multiplication is associative and commutative on every basis triple") {
  auto ring = make_product({make_projective_space(2), make_projective_space(1, "G")});
  const std::size_t n = ring->dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const RingElement a = RingElement::basis(ring, i);
      const RingElement b = RingElement::basis(ring, j);
      CHECK(a * b == b * a);
      for (std::size_t k = 0; k < n; ++k) {
        const RingElement c = RingElement::basis(ring, k);
        CHECK((a * b) * c == a * (b * c));
      }
    }
  }
}

TEST_CASE("divisors are nilpotent within dim X + 1 steps") {
  for (int n = 1; n <= 4; ++n) {
    auto ring = make_projective_space(n);
    const auto idx = nilpotency_index(RingElement::divisor(ring, 0) * Rational(3));
    REQUIRE(idx.has_value());
    CHECK(*idx <= n + 1);
  }
  auto ring = make_product({make_projective_space(1, "H1"), make_projective_space(2, "H2")});
  for (std::size_t i = 0; i < ring->num_divisors(); ++i) {
    CHECK(nilpotency_index(RingElement::divisor(ring, i)).value_or(99) <= ring->complex_dimension() + 1);
  }
}

TEST_CASE("intersect is additive in the class and in the curve") {
  auto ring = make_product({make_projective_space(1, "H1"), make_projective_space(1, "H2")});
  const RingElement a = RingElement::divisor(ring, 0) * Rational(2) + RingElement::divisor(ring, 1);
  const RingElement b = RingElement::divisor(ring, 1) * Rational(5);
  const CurveClass d1({1, 2});
  const CurveClass d2({3, 0});
  CHECK(intersect(a + b, d1) == intersect(a, d1) + intersect(b, d1));
  CHECK(intersect(a, d1 + d2) == intersect(a, d1) + intersect(a, d2));
}

TEST_CASE("table rings are validated") {
  RingTableSpec spec;
  spec.basis = {{"1", 0}, {"H", 2}};
  spec.integral = {Rational(0), Rational(1)};
  spec.divisors = {{Rational(0), Rational(1)}};
  spec.curve_pairings = {{1}};
  auto ring = make_table_ring(spec, "P1");
  CHECK((RingElement::divisor(ring, 0) * RingElement::divisor(ring, 0)).is_zero());

  RingTableSpec bad = spec;
  bad.basis[0].degree = 2;
  CHECK(kind_of([&] { make_table_ring(bad); }) == ErrorKind::Grading);
  bad = spec;
  bad.integral = {Rational(1), Rational(1)};
  CHECK(kind_of([&] { make_table_ring(bad); }) == ErrorKind::Grading);
  bad = spec;
  bad.products.push_back({1, 1, {{0, Rational(1)}}});
  CHECK_THROWS_AS(make_table_ring(bad), Error);
}

TEST_CASE("linear algebra over the rationals") {
  const RationalMatrix a{{Rational(1), Rational(2)}, {Rational(2), Rational(4)}};
  const auto echelon = reduced_row_echelon(a);
  CHECK(echelon.pivots.size() == 1);
  const auto kernel = kernel_basis(a, 2);
  REQUIRE(kernel.size() == 1);
  CHECK(kernel[0][0] + kernel[0][1] * Rational(2) == Rational(0));
  const auto x = solve_linear({{Rational(2), Rational(1)}, {Rational(1), Rational(3)}}, {Rational(3), Rational(5)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == Rational(4, 5));
  CHECK((*x)[1] == Rational(7, 5));
  CHECK(!solve_linear(a, {Rational(1), Rational(1)}).has_value());
}
