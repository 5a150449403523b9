#include <doctest.h>

#include <atomic>
#include <functional>

#include "rootmirror/checks.hpp"
#include "rootmirror/error.hpp"
#include "rootmirror/factored.hpp"
#include "rootmirror/mirror_map.hpp"
#include "rootmirror/parallel.hpp"
#include "rootmirror/series.hpp"

using namespace rootmirror;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Config;
}

struct P2 {
  RingPtr ring = make_projective_space(2);
  RingElement one = RingElement::one(ring);
  RingElement h = RingElement::divisor(ring, 0);
  RingElement h2 = h * h;
};

RingLaurent laurent(std::initializer_list<std::pair<int, RingElement>> terms) {
  RingLaurent out;
  for (const auto& [e, v] : terms) out.add_term(e, v);
  return out;
}

}  // namespace

TEST_CASE("gamma ratio as a finite product") {
  P2 x;
  CHECK(gamma_ratio(x.h, Rational(0)).factors().empty());
  CHECK(gamma_ratio(x.h, Rational(-2, 5)).factors().empty());

  const FactoredZFunction g = gamma_ratio(x.h, Rational(7, 3));
  REQUIRE(g.factors().size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(g.factors()[i].cls == x.h);
    CHECK(g.factors()[i].exponent == -1);
  }
  CHECK(g.factors()[0].a == Rational(1, 3));
  CHECK(g.factors()[1].a == Rational(4, 3));
  CHECK(g.factors()[2].a == Rational(7, 3));

  const FactoredZFunction n = gamma_ratio(x.h, Rational(-7, 3));
  REQUIRE(n.factors().size() == 2);
  CHECK(n.factors()[0].exponent == 1);
}

TEST_CASE("ascending products") {
  P2 x;
  CHECK(ascending_product(x.h, 0).factors().empty());
  const FactoredZFunction p = ascending_product(x.h * Rational(3), 3);
  REQUIRE(p.factors().size() == 3);
  CHECK(p.factors()[2].a == Rational(3));
  CHECK(p.factors()[2].cls == x.h * Rational(3));
  CHECK(ascending_product(x.h * Rational(3), 2).factors().size() == 2);
  CHECK(kind_of([&] { ascending_product(x.h, -1); }) == ErrorKind::Domain);
}

TEST_CASE("expansion at z = infinity") {
  P2 x;
  FactoredZFunction f(x.ring);
  f.times_factor(x.h, Rational(1), -1).times_factor(x.h, Rational(1), -1).times_factor(x.h, Rational(1), -1);
  CHECK(expand_ring(f) == laurent({{-3, x.one}, {-4, x.h * Rational(-3)}, {-5, x.h2 * Rational(6)}}));

  FactoredZFunction g = f;
  g.times_z(1).times_factor(x.h * Rational(3), Rational(1), 1).times_factor(x.h * Rational(3), Rational(2), 1);
  CHECK(expand_ring(g) == laurent({{0, x.one * Rational(2)}, {-1, x.h * Rational(3)}, {-2, x.h2 * Rational(-6)}}));

  CHECK(expand_ring(FactoredZFunction(x.ring)) == laurent({{0, x.one}}));

  const LaurentBlock b = expand(g, SectorLabel::contact(-3));
  REQUIRE(b.find(0) != nullptr);
  CHECK(*b.find(0) == StateVector(SectorLabel::contact(-3), x.one * Rational(2)));
}

TEST_CASE("inverse factors need a nonzero z coefficient") {
  P2 x;
  FactoredZFunction f(x.ring);
  CHECK(kind_of([&] { f.times_factor(x.h, Rational(0), -1); }) == ErrorKind::NilpotentDivision);
}

TEST_CASE("windowed expansion keeps only the exact part") {
  P2 x;
  FactoredZFunction f(x.ring);
  f.times_factor(x.h, Rational(1), -1).times_factor(x.h, Rational(1), -1).times_factor(x.h, Rational(1), -1);
  const RingLaurent w = expand_ring(f, -4);
  CHECK(w.floor() == std::optional<int>(-4));
  CHECK(w.coeffs().size() == 2);
  CHECK(kind_of([&] { w.find(-5); }) == ErrorKind::Window);
  CHECK(agree(w, expand_ring(f)));
}

TEST_CASE("laurent products track windows") {
  P2 x;
  const RingLaurent a = laurent({{0, x.one}, {-1, x.h}}).windowed(-1);
  const RingLaurent b = laurent({{0, x.one}, {-2, x.h2}});
  const RingLaurent p = a * b;
  CHECK(p.floor() == std::optional<int>(-1));
  REQUIRE(p.find(-1) != nullptr);
  CHECK(*p.find(-1) == x.h);
}

TEST_CASE("divisor exponential") {
  P2 x;
  const SeriesShape shape{1, 0, 1};
  const SeriesBounds bounds{{3}, 0, std::nullopt, std::nullopt};
  const GradedSeries e = exp_divisor_over_z(x.h, 0, shape, bounds);
  CHECK(e.entries().size() == 3);
  const SeriesIndex l2{CurveClass({0}), {}, {2}};
  REQUIRE(e.find(l2) != nullptr);
  CHECK(*e.find(l2) == LaurentBlock::term(-2, StateVector(SectorLabel::age(0), x.h2 * Rational(1, 2))));

  const GradedSeries zero = exp_divisor_over_z(RingElement::zero(x.ring), 0, shape, bounds);
  CHECK(zero.entries().size() == 1);

  auto p1 = make_projective_space(1);
  const GradedSeries e1 = exp_divisor_over_z(RingElement::divisor(p1, 0), 0, shape, bounds);
  CHECK(e1.entries().size() == 2);
}

TEST_CASE("graded products add indices and respect bounds") {
  P2 x;
  const SeriesShape shape{1, 0, 0};
  const SeriesBounds bounds{{3}, 0, std::nullopt, std::nullopt};
  GradedSeries a(shape, bounds);
  GradedSeries b(shape, bounds);
  a.add({CurveClass({1}), {}, {}}, LaurentBlock::term(0, StateVector(SectorLabel::age(0), x.h)));
  b.add({CurveClass({2}), {}, {}}, LaurentBlock::term(-1, StateVector(SectorLabel::age(0), x.h)));
  const GradedSeries p = series_mul(a, b);
  REQUIRE(p.entries().size() == 1);
  CHECK(p.entries().begin()->first.d == CurveClass({3}));
  CHECK(*p.find({CurveClass({3}), {}, {}}) == LaurentBlock::term(-1, StateVector(SectorLabel::age(0), x.h2)));

  const GradedSeries sq = series_mul(b, b);
  CHECK(sq.empty());
  const SeriesBounds tight{{1}, 0, std::nullopt, std::nullopt};
  CHECK(truncate(series_add(a, b), tight).entries().size() == 1);
  CHECK(kind_of([&] { a.add({CurveClass({4}), {}, {}}, LaurentBlock()); }) == ErrorKind::Bounds);
}

TEST_CASE("scalar series arithmetic") {
  const ScalarSeries q = scalar_variable(1, 4, 0);
  const ScalarSeries e = exp(q);
  CHECK(*e.find({3}) == Rational(1, 6));
  CHECK(*e.find({4}) == Rational(1, 24));
  CHECK(exp(q * Rational(-1)) * e == scalar_constant(1, 4, Rational(1)));
  CHECK(pow(q + q * q, 2).find({3}) != nullptr);
  CHECK(kind_of([&] { compose(q, {e}); }) == ErrorKind::Domain);
}

TEST_CASE("inverting the identity map") {
  P2 x;
  MirrorMap tau;
  tau.curves = 1;
  tau.directions = {SectorLabel::contact(2)};
  tau.components = StateSeries(2, 3);
  tau.components.add_term({0, 1}, StateVector(SectorLabel::contact(2), x.one));
  const SubstitutionTable t = invert_map(tau, 3);
  CHECK(t.inverse[0] == scalar_variable(2, 3, 1));
  CHECK(!round_trip_failure(t).has_value());
}

TEST_CASE("inverting a linear shift") {
  P2 x;
  MirrorMap tau;
  tau.curves = 1;
  tau.directions = {SectorLabel::contact(2)};
  tau.components = StateSeries(2, 3);
  tau.components.add_term({0, 1}, StateVector(SectorLabel::contact(2), x.one));
  tau.components.add_term({1, 0}, StateVector(SectorLabel::contact(2), x.one * Rational(5)));
  tau.components.add_term({1, 1}, StateVector(SectorLabel::contact(2), x.one * Rational(2)));
  const SubstitutionTable t = invert_map(tau, 3);
  CHECK(*t.inverse[0].find({1, 0}) == Rational(-5));
  CHECK(!round_trip_failure(t).has_value());
}

TEST_CASE("a sector nobody owns becomes a sector shift") {
  P2 x;
  MirrorMap tau;
  tau.curves = 1;
  tau.components = StateSeries(1, 1);
  tau.components.add_term({1}, StateVector(SectorLabel::contact(-3), x.one * Rational(2)));
  const SubstitutionTable t = invert_map(tau, 1);
  REQUIRE(t.sector_shift.count(SectorLabel::contact(-3)) == 1);
  CHECK(*t.sector_shift.at(SectorLabel::contact(-3)).find({1}) == Rational(2));
  REQUIRE(t.steps.size() == 1);
  CHECK(t.steps[0].role == "sector-shift");
}

TEST_CASE("inversion preconditions") {
  P2 x;
  MirrorMap tau;
  tau.curves = 1;
  tau.directions = {SectorLabel::contact(2)};
  tau.components = StateSeries(2, 2);
  tau.components.add_term({0, 1}, StateVector(SectorLabel::contact(2), x.one * Rational(3)));
  CHECK(kind_of([&] { invert_map(tau, 2); }) == ErrorKind::NotInvertible);

  MirrorMap offset;
  offset.curves = 1;
  offset.components = StateSeries(1, 2);
  offset.components.add_term({0}, StateVector(SectorLabel::contact(0), x.h));
  CHECK(kind_of([&] { invert_map(offset, 2); }) == ErrorKind::NotInvertible);
  offset.parameter = StateVector(SectorLabel::contact(0), x.h);
  CHECK_NOTHROW(invert_map(offset, 2));
  CHECK(kind_of([&] { invert_map(offset, 3); }) == ErrorKind::Bounds);

  MirrorMap high;
  high.curves = 1;
  high.components = StateSeries(1, 2);
  high.components.add_term({1}, StateVector(SectorLabel::contact(0), x.h2));
  CHECK(kind_of([&] { invert_map(high, 2); }) == ErrorKind::UnsupportedDirection);
}

TEST_CASE("structural suites over small rings") {
  CHECK(check_gamma_inverse_law(make_projective_space(3), 30, 11).status == CheckStatus::Pass);
  CHECK(check_expand_multiplicative(make_projective_space(2), 20, 12).status == CheckStatus::Pass);
  auto ring = make_product({make_projective_space(1, "H1"), make_projective_space(1, "H2")});
  CHECK(check_expand_multiplicative(ring, 20, 13).status == CheckStatus::Pass);
}

TEST_CASE("parallel_for visits every index once") {
  std::vector<std::atomic<int>> hits(257);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
  for (const auto& h : hits) CHECK(h.load() == 1);
  CHECK(worker_count() >= 1);
}

TEST_CASE("parallel_for rethrows the lowest failing index") {
  try {
    parallel_for(64, [](std::size_t i) {
      if (i % 10 == 3) fail(ErrorKind::Domain, "index " + std::to_string(i));
    });
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()) == "domain error: index 3");
  }
}
