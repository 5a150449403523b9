#include <doctest.h>

#include <functional>
#include <random>

#include "rootmirror/error.hpp"
#include "rootmirror/sectors.hpp"

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

struct P2Cubic {
  RingPtr ring = make_projective_space(2);
  RingElement one = RingElement::one(ring);
  RingElement h = RingElement::divisor(ring, 0);
  RingElement d = h * Rational(3);
};

StateVector at(const SectorLabel& l, const RingElement& cls) { return StateVector(l, cls); }

}  // namespace

TEST_CASE("sector labels") {
  CHECK(SectorLabel::age(Rational(2, 5)).opposite() == SectorLabel::age(Rational(3, 5)));
  CHECK(SectorLabel::age(0).opposite() == SectorLabel::age(0));
  CHECK(SectorLabel::contact(3).opposite() == SectorLabel::contact(-3));
  CHECK(SectorLabel::age_of(Rational(-3, 5)) == SectorLabel::age(Rational(2, 5)));
  CHECK(SectorLabel::untwisted(SectorLabel::Kind::Contact).is_untwisted());
  CHECK(kind_of([] { SectorLabel::age(Rational(1)); }) == ErrorKind::Domain);
  CHECK(kind_of([] { SectorLabel::contact(2).age_value(); }) == ErrorKind::LabelKind);
  CHECK(kind_of([] { SectorLabel::age(0).contact_value(); }) == ErrorKind::LabelKind);
}

TEST_CASE("state vectors merge and cancel") {
  P2Cubic x;
  StateVector v = at(SectorLabel::age(Rational(1, 5)), x.h);
  v += at(SectorLabel::age(Rational(1, 5)), -x.h);
  CHECK(v.is_zero());
  CHECK(kind_of([&] { StateVector w = at(SectorLabel::age(0), x.one); w.add(SectorLabel::contact(1), x.one); }) ==
        ErrorKind::LabelKind);
}

TEST_CASE("module product needs an untwisted operand") {
  P2Cubic x;
  const StateVector u = at(SectorLabel::age(0), x.h);
  const StateVector t = at(SectorLabel::age(Rational(2, 5)), x.h);
  CHECK(u * t == at(SectorLabel::age(Rational(2, 5)), x.h * x.h));
  CHECK(kind_of([&] { (void)(t * t); }) == ErrorKind::IncompatibleSectors);
  CHECK(kind_of([&] { (void)(u * at(SectorLabel::contact(0), x.one)); }) == ErrorKind::IncompatibleSectors);
}

TEST_CASE("relative pairing on the projective plane with a cubic") {
  P2Cubic x;
  const SectorPairingContext rel(x.d, std::nullopt);
  CHECK(pair(at(SectorLabel::contact(3), x.one), at(SectorLabel::contact(-3), x.one), rel) == Rational(0));
  CHECK(pair(at(SectorLabel::contact(3), x.one), at(SectorLabel::contact(-3), x.h), rel) == Rational(3));
  CHECK(pair(at(SectorLabel::contact(0), x.one), at(SectorLabel::contact(0), x.h * x.h), rel) == Rational(1));
  CHECK(pair(at(SectorLabel::contact(3), x.one), at(SectorLabel::contact(3), x.h), rel) == Rational(0));
}

TEST_CASE("root-stack pairing on the projective plane with a cubic") {
  P2Cubic x;
  const SectorPairingContext root(x.d, 5);
  CHECK(pair(at(SectorLabel::age(Rational(2, 5)), x.one), at(SectorLabel::age(Rational(3, 5)), x.h), root) ==
        Rational(3, 5));
  CHECK(pair(at(SectorLabel::age(Rational(1, 5)), x.one), at(SectorLabel::age(Rational(1, 5)), x.one), root) ==
        Rational(0));
  CHECK(pair(at(SectorLabel::age(0), x.h), at(SectorLabel::age(0), x.h), root) == Rational(1));
  CHECK(kind_of([&] { pair(at(SectorLabel::age(Rational(1, 3)), x.one), at(SectorLabel::age(Rational(2, 3)), x.one), root); }) ==
        ErrorKind::Domain);
  CHECK(kind_of([&] { pair(at(SectorLabel::contact(1), x.one), at(SectorLabel::contact(-1), x.one), root); }) ==
        ErrorKind::LabelKind);
}

TEST_CASE("pairings are symmetric and bilinear") {
  P2Cubic x;
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coeff(-4, 4);
  const SectorPairingContext root(x.d, 4);
  std::vector<SectorLabel> ages;
  for (long a = 0; a < 4; ++a) ages.push_back(SectorLabel::age(Rational(a, 4)));
  auto random_vector = [&] {
    StateVector v;
    for (const auto& l : ages) {
      RationalVector c(x.ring->dim());
      for (auto& q : c) q = Rational(coeff(rng));
      v.add(l, RingElement(x.ring, c));
    }
    return v;
  };
  for (int trial = 0; trial < 20; ++trial) {
    const StateVector u = random_vector();
    const StateVector v = random_vector();
    const StateVector w = random_vector();
    CHECK(pair(u, v, root) == pair(v, u, root));
    CHECK(pair(u + w, v, root) == pair(u, v, root) + pair(w, v, root));
    CHECK(pair(u * Rational(3), v, root) == Rational(3) * pair(u, v, root));
  }
}

TEST_CASE("restriction to D reduces modulo the annihilator") {
  P2Cubic x;
  const DivisorRestriction res(x.d);
  CHECK(res.annihilates(x.h * x.h));
  CHECK(!res.annihilates(x.h));
  CHECK(res.image_basis().size() == 2);
  const SectorPairingContext root(x.d, 5);
  const StateVector v = at(SectorLabel::age(Rational(1, 5)), x.h + x.h * x.h);
  CHECK(root.normalize(v) == at(SectorLabel::age(Rational(1, 5)), x.h));
  CHECK(root.sector_basis(SectorLabel::age(Rational(1, 5))).size() == 2);
  CHECK(root.sector_basis(SectorLabel::age(0)).size() == 3);
}

TEST_CASE("root-stack sectors land on contact orders") {
  P2Cubic x;
  for (long r : {4L, 5L, 7L, 11L}) {
    const SectorPairingContext root(x.d, r);
    const StateVector v = at(SectorLabel::age_of(Rational(-3, r)), x.one * Rational(r));
    CHECK(root_to_relative(v, root, CurveClass({1}), 0) == at(SectorLabel::contact(-3), x.one));
  }
  const SectorPairingContext root5(x.d, 5);
  CHECK(root_to_relative(at(SectorLabel::age(Rational(2, 5)), x.one), root5, CurveClass({0}), 2) ==
        at(SectorLabel::contact(2), x.one));
  CHECK(kind_of([&] { root_to_relative(at(SectorLabel::age(Rational(1, 5)), x.one), root5, CurveClass({0}), 2); }) ==
        ErrorKind::Identification);
  const SectorPairingContext rel(x.d, std::nullopt);
  CHECK(kind_of([&] { root_to_relative(at(SectorLabel::age(0), x.one), rel, CurveClass({0}), 0); }) ==
        ErrorKind::Identification);
}

TEST_CASE("negative-contact scaling") {
  CHECK(rho_minus_factor(5, 0) == Rational(1));
  CHECK(rho_minus_factor(5, 2) == Rational(25));
  CHECK(kind_of([] { rho_minus_factor(0, 1); }) == ErrorKind::Domain);
}
