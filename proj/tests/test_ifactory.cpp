#include <doctest.h>

#include <algorithm>
#include <functional>

#include "rootmirror/checks.hpp"
#include "rootmirror/error.hpp"
#include "rootmirror/ifunctions.hpp"

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

SeriesIndex at(std::vector<long> d, std::vector<long> k, std::size_t logs) {
  return {CurveClass(std::move(d)), std::move(k), std::vector<long>(logs, 0)};
}

const LaurentBlock& entry(const IFunction& f, const SeriesIndex& index) {
  const LaurentBlock* b = f.series.find(index);
  REQUIRE_MESSAGE(b != nullptr, "missing entry " << index.str());
  return *b;
}

LaurentBlock block(const SectorLabel& s, std::initializer_list<std::pair<int, RingElement>> terms) {
  LaurentBlock out;
  for (const auto& [e, v] : terms) out.add_term(e, StateVector(s, v));
  return out;
}

struct P2Cubic {
  GeometryConfig cfg = projective_config(2, 3, 5, 3);
  RingElement one = RingElement::one(cfg.ring);
  RingElement h = RingElement::divisor(cfg.ring, 0);
};

}  // namespace

TEST_CASE("theory names round-trip") {
  for (Theory t : {Theory::Absolute, Theory::RootStack, Theory::RootStackExtended, Theory::Relative,
                   Theory::RelativeExtended, Theory::Ambient, Theory::ToricDirect, Theory::Local, Theory::GerbeJ,
                   Theory::GerbeTwisted}) {
    CHECK(parse_theory(theory_name(t)) == t);
  }
  CHECK(!parse_theory("quantum").has_value());
}

TEST_CASE("absolute projective plane at the zero log stratum") {
  auto cfg = projective_config(2, 3, 1, 3);
  const IFunction f = i_absolute(cfg);
  const RingElement one = RingElement::one(cfg.ring);
  const RingElement h = RingElement::divisor(cfg.ring, 0);
  const SectorLabel u = SectorLabel::age(0);
  CHECK(entry(f, at({0}, {}, 1)) == block(u, {{1, one}}));
  CHECK(entry(f, at({1}, {}, 1)) == block(u, {{-2, one}, {-3, h * Rational(-3)}, {-4, h * h * Rational(6)}}));
}

TEST_CASE("root stack of the plane along a cubic") {
  P2Cubic x;
  const IFunction f = i_root_stack(x.cfg);
  CHECK(f.recipes.size() == 4);
  CHECK(f.recipes[1].sector == SectorLabel::age(Rational(2, 5)));
  CHECK(f.recipes[2].sector == SectorLabel::age(Rational(4, 5)));
  CHECK(entry(f, at({1}, {}, 1)) ==
        block(SectorLabel::age(Rational(2, 5)), {{0, x.one * Rational(10)}, {-1, x.h * Rational(15)}}));
  CHECK(entry(f, at({0}, {}, 1)) == block(SectorLabel::age(0), {{1, x.one}}));
}

TEST_CASE("root stack with r = 1 is the base") {
  auto cfg = projective_config(2, 3, 1, 3);
  const IFunction root = i_root_stack(cfg);
  const IFunction abs = i_absolute(cfg);
  CHECK(root.series.entries() == abs.series.entries());
}

TEST_CASE("extended root stack") {
  P2Cubic x;
  x.cfg.S = {1};
  x.cfg.bounds.kmax = 2;
  const IFunction f = i_root_stack_extended(x.cfg);
  CHECK(f.directions == std::vector<SectorLabel>{SectorLabel::age(Rational(1, 5))});
  CHECK(entry(f, at({0}, {2}, 1)) == block(SectorLabel::age(Rational(2, 5)), {{-1, x.one * Rational(1, 2)}}));
  CHECK(entry(f, at({0}, {1}, 1)) == block(SectorLabel::age(Rational(1, 5)), {{0, x.one}}));
  const auto& rec = f.recipes;
  const auto it = std::find_if(rec.begin(), rec.end(), [](const CoefficientRecipe& c) {
    return c.index.d == CurveClass({1}) && c.index.k == std::vector<long>{1};
  });
  REQUIRE(it != rec.end());
  CHECK(it->sector == SectorLabel::age(Rational(3, 5)));
}

TEST_CASE("S must lie below r for the root stack") {
  P2Cubic x;
  x.cfg.S = {7};
  x.cfg.bounds.kmax = 1;
  CHECK(kind_of([&] { i_root_stack_extended(x.cfg); }) == ErrorKind::Config);
  x.cfg.S = {0};
  CHECK(kind_of([&] { i_relative_extended(x.cfg); }) == ErrorKind::Config);
}

TEST_CASE("relative plane with a cubic") {
  P2Cubic x;
  const IFunction f = i_relative(x.cfg);
  CHECK(f.kind == SectorLabel::Kind::Contact);
  CHECK(entry(f, at({1}, {}, 1)) == block(SectorLabel::contact(-3), {{0, x.one * Rational(2)}, {-1, x.h * Rational(3)}}));
  CHECK(entry(f, at({0}, {}, 1)) == block(SectorLabel::contact(0), {{1, x.one}}));
}

TEST_CASE("relative three-space with a cubic") {
  auto cfg = projective_config(3, 3, 1, 2);
  const IFunction f = i_relative(cfg);
  const RingElement h = RingElement::divisor(cfg.ring, 0);
  FactoredZFunction g(cfg.ring);
  g.times_z(1);
  for (int i = 0; i < 4; ++i) g.times_factor(h, Rational(1), -1);
  g.times_factor(h * Rational(3), Rational(1), 1).times_factor(h * Rational(3), Rational(2), 1);
  const DivisorRestriction res(h * Rational(3));
  const RingLaurent expected = expand_ring(g).map_values([&](const RingElement& c) { return res.reduce(c); });
  CHECK(entry(f, at({1}, {}, 1)) == place_in_sector(expected, SectorLabel::contact(-3)));
}

TEST_CASE("extended relative branches") {
  P2Cubic x;
  x.cfg.S = {1};
  x.cfg.bounds.kmax = 2;
  const IFunction f = i_relative_extended(x.cfg);
  CHECK(entry(f, at({0}, {2}, 1)) == block(SectorLabel::contact(2), {{-1, x.one * Rational(1, 2)}}));
  const auto it = std::find_if(f.recipes.begin(), f.recipes.end(), [](const CoefficientRecipe& c) {
    return c.index.d == CurveClass({1}) && c.index.k == std::vector<long>{1};
  });
  REQUIRE(it != f.recipes.end());
  CHECK(it->sector == SectorLabel::contact(-2));

  const IFunction plain = i_relative(x.cfg);
  for (const auto& [index, b] : plain.series.entries()) {
    SeriesIndex extended = index;
    extended.k = {0};
    CHECK(entry(f, extended) == b);
  }
}

TEST_CASE("ambient I-function") {
  P2Cubic x;
  const IFunction f = i_ambient_tilde(x.cfg);
  CHECK(f.series.find(at({1, 2}, {}, 2)) == nullptr);
  CHECK(entry(f, at({0, 1}, {}, 2)) == block(SectorLabel::age(Rational(4, 5)), {{0, x.one * Rational(5)}}));
  x.cfg.lambda_mode = LambdaMode::Formal;
  CHECK(kind_of([&] { i_ambient_tilde(x.cfg); }) == ErrorKind::Mode);
}

TEST_CASE("local theory") {
  P2Cubic x;
  x.cfg.r = 1;
  const IFunction f = i_local(x.cfg);
  FactoredZFunction g(x.cfg.ring);
  g.times_z(1);
  for (int i = 0; i < 3; ++i) g.times_factor(x.h, Rational(1), -1);
  for (int a = 0; a < 3; ++a) g.times_factor(x.h * Rational(-3), Rational(-a), 1);
  const LaurentBlock& b = entry(f, at({1}, {}, 1));
  REQUIRE(b.coeffs().size() > 0);
  const SectorLabel label = b.coeffs().begin()->second.terms().begin()->first;
  CHECK(b == place_in_sector(expand_ring(g), label));
}

TEST_CASE("toric configurations") {
  auto cfg = projective_config(2, 1, 2, 3);
  const IFunction toric = i_toric_direct(cfg);
  const IFunction root = i_root_stack(cfg);
  CHECK(toric.series.entries() == root.series.entries());
  cfg.toric_divisors.clear();
  CHECK(kind_of([&] { i_toric_direct(cfg); }) == ErrorKind::MissingData);
  auto cubic = projective_config(2, 3, 2, 3);
  CHECK(kind_of([&] { i_toric_direct(cubic); }) == ErrorKind::MissingData);
}

TEST_CASE("twisted gerbe needs the formal lambda mode") {
  P2Cubic x;
  CHECK(kind_of([&] { i_gerbe_twisted(x.cfg); }) == ErrorKind::Mode);
  x.cfg.lambda_mode = LambdaMode::Formal;
  CHECK_NOTHROW(i_gerbe_twisted(x.cfg));
  CHECK_NOTHROW(i_gerbe_j(x.cfg));
}

TEST_CASE("I-function identities on the projective plane") {
  auto cfg = projective_config(2, 3, 5, 3);
  CHECK(check_extension_zero(cfg).status == CheckStatus::Pass);
  CHECK(check_local_sign(cfg).status == CheckStatus::Pass);
  CHECK(check_ambient_restriction(cfg).status == CheckStatus::Pass);
  auto two = cfg;
  two.bounds.dmax = {2};
  CHECK(check_lambda_limit(two).status == CheckStatus::Pass);
  CHECK(check_exp_divisor_relation(cfg).status == CheckStatus::Pass);
  CHECK(check_toric_agreement(cfg).status == CheckStatus::Skip);
  CHECK(check_toric_agreement(projective_config(2, 1, 3, 3)).status == CheckStatus::Pass);
}

TEST_CASE("I-function identities on a product of lines") {
  auto ring = make_product({make_projective_space(1, "H1"), make_projective_space(1, "H2")});
  GeometryConfig cfg(ring, RingElement::divisor(ring, 0) + RingElement::divisor(ring, 1));
  cfg.r = 7;
  cfg.bounds.dmax = {2, 2};
  cfg.j_mode = JMode::Toric;
  cfg.toric_divisors = standard_toric_divisors(ring);
  CHECK(cfg.toric_divisors.size() == 4);
  CHECK(check_extension_zero(cfg).status == CheckStatus::Pass);
  CHECK(check_local_sign(cfg).status == CheckStatus::Pass);
  CHECK(check_ambient_restriction(cfg).status == CheckStatus::Pass);
  cfg.divisor = RingElement::divisor(ring, 0);
  CHECK(check_toric_agreement(cfg).status == CheckStatus::Pass);
}

TEST_CASE("stabilization in r") {
  auto cfg = projective_config(2, 3, 1, 2);
  CHECK(check_stabilization(cfg, {7, 8, 9}, false).status == CheckStatus::Pass);
  cfg.S = {1};
  cfg.bounds.kmax = 2;
  CHECK(check_stabilization(cfg, {9, 10}, true).status == CheckStatus::Pass);
}
