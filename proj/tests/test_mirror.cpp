#include <doctest.h>

#include <functional>

#include "rootmirror/error.hpp"
#include "rootmirror/mirror.hpp"

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

// Value of the record at degree d with psi power 0 (or the given power).
std::optional<Rational> record(const std::vector<InvariantRecord>& recs, long d, long psi = 0,
                               std::optional<std::size_t> insertion = std::nullopt) {
  for (const auto& r : recs) {
    if (r.d != CurveClass({d}) || r.psi_power != psi) continue;
    if (insertion && !(r.insertion == RingElement::basis(r.insertion.ring(), *insertion))) continue;
    return r.value;
  }
  return std::nullopt;
}

Rational factorial_cubed_inverse(long d) {
  Rational f(1);
  for (long i = 2; i <= d; ++i) f *= Rational(i);
  return (f * f * f).inverse();
}

}  // namespace

TEST_CASE("split of the relative I-function") {
  auto cfg = projective_config(2, 3, 1, 3);
  cfg.bounds.log_max = 0;
  const IFunction i = i_relative(cfg);
  const SplitResult s = split(i, 3);
  CHECK(s.tau.directions.empty());
  const StateVector* q1 = s.tau.components.find({1});
  REQUIRE(q1 != nullptr);
  CHECK(*q1 == StateVector(SectorLabel::contact(-3), RingElement::one(cfg.ring) * Rational(2)));
  CHECK(s.tau.components.find({0}) == nullptr);
}

TEST_CASE("split rejects a positive power of z away from the origin") {
  auto cfg = projective_config(2, 3, 1, 2);
  cfg.bounds.log_max = 0;
  IFunction i = i_absolute(cfg);
  i.series.add({CurveClass({1}), {}, {0}},
               LaurentBlock::term(1, StateVector(SectorLabel::age(0), RingElement::one(cfg.ring))));
  CHECK(kind_of([&] { split(i, 2); }) == ErrorKind::ConeSliceOutOfContract);
}

TEST_CASE("absolute projective plane: J = I and one-point descendants") {
  auto cfg = projective_config(2, 3, 1, 5);
  const PipelineResult res = run_invariants(Theory::Absolute, cfg, 5);
  REQUIRE(res.j.novikov_inverse.size() == 1);
  CHECK(res.j.novikov_inverse[0] == scalar_variable(1, 5, 0));
  CHECK(res.j.steps.empty());
  for (long d = 1; d <= 5; ++d) {
    CHECK(record(res.records, d, 3 * d - 2, 2) == factorial_cubed_inverse(d));
  }
}

TEST_CASE("relative invariants of the plane with a cubic") {
  auto cfg = projective_config(2, 3, 1, 5);
  const PipelineResult res = run_invariants(Theory::Relative, cfg, 5);
  const std::vector<Rational> expected{Rational(9), Rational(135, 4), Rational(244), Rational(36999, 16),
                                       Rational(635634, 25)};
  for (long d = 1; d <= 5; ++d) {
    CHECK(record(res.records, d) == expected[d - 1]);
  }
  const std::vector<Rational> shift{Rational(2), Rational(15), Rational(560, 3), Rational(5775, 2), Rational(252252, 5)};
  REQUIRE(res.j.steps.size() == 5);
  for (std::size_t d = 0; d < 5; ++d) {
    CHECK(res.j.steps[d].role == "sector-shift");
    CHECK(res.j.steps[d].coefficient == shift[d]);
  }
}

TEST_CASE("local invariants of the plane") {
  auto cfg = projective_config(2, 3, 1, 5);
  const PipelineResult res = run_invariants(Theory::Local, cfg, 5);
  const std::vector<Rational> expected{Rational(3), Rational(-45, 8), Rational(244, 9), Rational(-12333, 64),
                                       Rational(211878, 125)};
  for (long d = 1; d <= 5; ++d) {
    CHECK(record(res.records, d) == expected[d - 1]);
  }
}

TEST_CASE("the assembled J has no z^0 part beyond the origin") {
  auto cfg = projective_config(2, 3, 1, 4);
  cfg.bounds.log_max = 0;
  const IFunction i = i_relative(cfg);
  const TheoryContext ctx = theory_context(Theory::Relative, cfg);
  const JFunction j = assemble_j(i, ctx, 4);
  for (const auto& [e, block] : j.series.terms()) {
    if (total_degree(e) == 0) {
      CHECK(block == LaurentBlock::term(1, StateVector(SectorLabel::contact(0), RingElement::one(cfg.ring))));
    } else {
      CHECK(block.coeffs().lower_bound(0) == block.coeffs().end());
    }
  }
}

TEST_CASE("root stack with a large r matches the relative theory") {
  auto cfg = projective_config(2, 3, 50, 3);
  const auto s = augmented_extension(cfg);
  REQUIRE(s.has_value());
  CHECK(*s == std::vector<long>{41, 44, 47});
  const PipelineResult res = run_invariants(Theory::RootStack, cfg, 3);
  CHECK(record(res.records, 1) == Rational(9));
  CHECK(record(res.records, 2) == Rational(135, 4));
  CHECK(record(res.records, 3) == Rational(244));
}

TEST_CASE("inverse mirror map on the extended root stack") {
  auto cfg = projective_config(2, 3, 50, 3);
  cfg.S = {41, 44, 47};
  cfg.bounds.kmax = 3;
  cfg.bounds.log_max = 0;
  const IFunction i = i_root_stack_extended(cfg);
  const SplitResult s = split(i, 3);
  const SubstitutionTable t = invert_map(s.tau, 3);
  CHECK(!round_trip_failure(t).has_value());
  REQUIRE(t.inverse.size() == 3);
  CHECK(*t.inverse[2].find({1, 0, 0, 0}) == Rational(-100));
  CHECK(*t.inverse[1].find({2, 0, 0, 0}) == Rational(4250));
  CHECK(*t.inverse[0].find({3, 0, 0, 0}) == Rational(-101000));
}

TEST_CASE("small r refuses a sector shift it cannot place") {
  auto cfg = projective_config(2, 3, 5, 3);
  CHECK(!augmented_extension(cfg).has_value());
  CHECK(kind_of([&] { run_invariants(Theory::RootStack, cfg, 3); }) == ErrorKind::UnsupportedDirection);
}

TEST_CASE("extraction below the expansion window is an error") {
  auto cfg = projective_config(2, 3, 1, 2);
  cfg.bounds.z_min = -3;
  CHECK(kind_of([&] { run_invariants(Theory::Absolute, cfg, 2); }) == ErrorKind::Window);
}

TEST_CASE("theory contexts") {
  auto cfg = projective_config(2, 3, 5, 3);
  CHECK(theory_context(Theory::RootStack, cfg).nu == 5);
  CHECK(theory_context(Theory::RootStack, cfg).degree_sector(CurveClass({1})) == SectorLabel::age(Rational(2, 5)));
  CHECK(theory_context(Theory::Relative, cfg).degree_sector(CurveClass({2})) == SectorLabel::contact(-6));
  CHECK(kind_of([&] { theory_context(Theory::Ambient, cfg); }) == ErrorKind::Mode);
}

TEST_CASE("default inversion order") {
  auto cfg = projective_config(2, 3, 5, 4);
  CHECK(default_order(cfg, false) == 4);
  cfg.S = {1};
  cfg.bounds.kmax = 2;
  CHECK(default_order(cfg, true) == 2);
  CHECK(default_order(cfg, false) == 4);
}

TEST_CASE("correspondence between root-stack and relative coefficients") {
  auto cfg = projective_config(2, 3, 1, 4);
  const CorrespondenceReport plain = correspondence_table(cfg, {13, 14, 15, 16, 17, 18, 19, 20}, false);
  CHECK(plain.all_equal());
  CHECK(!plain.rows.empty());

  auto ext = projective_config(2, 3, 1, 2);
  ext.S = {1};
  ext.bounds.kmax = 2;
  const CorrespondenceReport extended = correspondence_table(ext, {9, 10}, true);
  CHECK(extended.all_equal());
  bool saw_negative_branch = false;
  for (const auto& row : extended.rows) saw_negative_branch |= row.index.k_total() > 0 && row.index.d.is_zero();
  CHECK(saw_negative_branch);

  try {
    correspondence_table(cfg, {3}, false);
    FAIL("expected a refusal");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Range);
    CHECK(std::string(e.what()).find("r = 3") != std::string::npos);
  }
}
