#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "hamcert/conditions.hpp"
#include "hamcert/errors.hpp"

using namespace hamcert;
using fixtures::nl;
using fixtures::rad;

namespace {

const ConstantsTable& sec3_constants() {
  static const ConstantsTable t = compute_constants(fixtures::sec3_problem());
  return t;
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

SystemProblem with_f(const SystemProblem& p, const std::string& f1, const std::string& f2) {
  return fixtures::with_f(p, f1.c_str(), f2.c_str());
}

}  // namespace

TEST_SUITE("conditions") {

TEST_CASE("sup of f1 / rho on the symmetric box") {
  const SystemProblem p = fixtures::sec3_problem();
  ConditionOptions grid_only;
  grid_only.hints = HintMode::Ignore;
  for (double rho : {0.03, 1.0, 700.0}) {
    const BoundEstimate g = sup_f_rho(p, 1, rho, rho, grid_only);
    CHECK(g.source == BoundSource::GridEstimate);
    CHECK(g.grid_value == doctest::Approx(6.0 * rho).epsilon(1e-14));
    CHECK(std::fabs(g.grid_location[1]) == doctest::Approx(rho));
    const BoundEstimate h = sup_f_rho(p, 1, rho, rho);
    CHECK(h.source == BoundSource::UserHint);
    CHECK(h.value == doctest::Approx(6.0 * rho));
    REQUIRE(h.hint_value);
  }
  const auto box = sup_box(p, 0.5, 2.0);
  CHECK(box[1].lo == -0.5);
  CHECK(box[4].hi == 2.0);
  CHECK(box[0].lo == 0.0);
  CHECK(box[0].hi == 1.0);
}

TEST_CASE("sup of f2 / rho on the non-negative box") {
  const SystemProblem p = fixtures::ex_problem();
  ConditionOptions grid_only;
  grid_only.hints = HintMode::Ignore;
  for (double rho : {0.04, 2.0}) {
    const BoundEstimate g = sup_f_rho(p, 2, rho, rho, grid_only);
    CHECK(g.grid_value <= 6.0 * rho + 1e-12);
    CHECK(g.grid_location[0] == 1.0);
  }
  // u1*u2 stays in [0, rho^2] so sin >= 0 and the sup 4 rho is attained at u1*u2 = 0.
  CHECK(sup_f_rho(p, 2, 0.04, 0.04, grid_only).grid_value == doctest::Approx(0.16).epsilon(1e-14));
  const auto box = sup_box(p, 0.5, 2.0);
  CHECK(box[1].lo == 0.0);
  CHECK(box[3].hi == 2.0);
}

TEST_CASE("inf boxes pin the selected coordinate") {
  const SystemProblem p = fixtures::sec3_problem();
  const auto plain = inf_box(p, 1, InfKind::Plain, 2.0, 3.0);
  CHECK(plain[0].lo == 7.0 / 32);
  CHECK(plain[0].hi == 21.0 / 32);
  CHECK(plain[1].lo == 0.75 * 2.0);
  CHECK(plain[1].hi == 2.0);
  CHECK(plain[2].lo == -2.0);
  const auto star = inf_box(p, 2, InfKind::Star, 2.0, 3.0);
  CHECK(star[0].lo == 0.0);
  CHECK(star[0].hi == 11.0 / 40);
  CHECK(star[4].lo == 13.0 / 44 * 3.0);
  CHECK(star[3].lo == -3.0);
}

TEST_CASE("inf of f1 / rho against the analytic bounds") {
  const SystemProblem p = fixtures::sec3_problem();
  ConditionOptions grid_only;
  grid_only.hints = HintMode::Ignore;
  for (double rho : {0.5, 700.0}) {
    const BoundEstimate plain = inf_f_rho(p, 1, InfKind::Plain, rho, rho, grid_only);
    CHECK(plain.grid_value >= 9.0 / 16 * rho - 1e-12);
    const BoundEstimate star = inf_f_rho(p, 1, InfKind::Star, rho, rho, grid_only);
    CHECK(star.grid_value >= 49.0 / 324 * rho - 1e-12);
    const BoundEstimate hinted = inf_f_rho(p, 1, InfKind::Star, rho, rho);
    CHECK(hinted.source == BoundSource::UserHint);
    CHECK(hinted.value == doctest::Approx(49.0 / 324 * rho));
  }
}

TEST_CASE("zero nonlinearity is exact") {
  const SystemProblem p = fixtures::with_f(fixtures::sec3_problem(), "0", "0");
  const BoundEstimate s = sup_f_rho(p, 1, 1.0, 1.0);
  CHECK(s.value == 0.0);
  CHECK(s.source == BoundSource::Exact);
  CHECK(inf_f_rho(p, 2, InfKind::Star, 1.0, 1.0).value == 0.0);
  ConditionOptions req;
  req.hints = HintMode::Require;
  CHECK_NOTHROW(sup_f_rho(p, 1, 1.0, 1.0, req));
  const ConstantsTable& k = sec3_constants();
  for (double rho : {1e-3, 1.0, 1e6}) {
    CHECK(check_I1(p, rho, rho, k).verdict == Verdict::Holds);
    CHECK(check_I0(p, rho, rho, k).verdict == Verdict::Fails);
  }
}

TEST_CASE("hint errors") {
  SystemProblem p = fixtures::sec3_problem();
  p.components[0].hints.sup = rad("rho1");
  CHECK_THROWS_AS(sup_f_rho(p, 1, 1.0, 1.0), HintInconsistent);
  p = fixtures::sec3_problem();
  p.components[0].hints.inf = rad("10*rho1");
  CHECK_THROWS_AS(inf_f_rho(p, 1, InfKind::Plain, 1.0, 1.0), HintInconsistent);
  p = fixtures::sec3_problem();
  p.components[1].hints.inf_star.reset();
  ConditionOptions req;
  req.hints = HintMode::Require;
  CHECK_THROWS_AS(inf_f_rho(p, 2, InfKind::Star, 1.0, 1.0, req), HintMissing);
  CHECK_NOTHROW(inf_f_rho(p, 2, InfKind::Star, 1.0, 1.0));
  CHECK_THROWS_AS(sup_f_rho(p, 1, 0.0, 1.0), Error);
}

TEST_CASE("I1 on the sign-changing example") {
  const SystemProblem p = fixtures::sec3_problem();
  const ConstantsTable& k = sec3_constants();
  const ConditionOutcome ok = check_I1(p, 0.03, 0.3, k);
  CHECK(ok.verdict == Verdict::Holds);
  REQUIRE(ok.entries.size() == 2);
  CHECK(ok.entries[0].lhs == doctest::Approx(0.18));
  CHECK(ok.entries[0].rhs == doctest::Approx(16.0 / 9));
  CHECK(ok.entries[1].rhs == doctest::Approx(20.0 / 11));
  for (const auto& e : ok.entries) {
    CHECK(e.bound_source == BoundSource::UserHint);
    CHECK(e.margin > e.error_band);
  }
  const ConditionOutcome bad = check_I1(p, 1.0, 1.0, k);
  CHECK(bad.verdict == Verdict::Fails);
  CHECK(bad.entries[0].margin == doctest::Approx(16.0 / 9 - 6.0));
}

TEST_CASE("I1 thresholds of the example: 6 rho1 < 16/9 and 6 rho2 < 20/11") {
  const SystemProblem p = fixtures::sec3_problem();
  const ConstantsTable& k = sec3_constants();
  CHECK(check_I1(p, 8.0 / 27 * 0.999, 10.0 / 33 * 0.999, k).verdict == Verdict::Holds);
  CHECK(check_I1(p, 8.0 / 27 * 1.001, 0.1, k).verdict == Verdict::Fails);
  // The hint 6 rho2 is loose when rho1 is small: the grid sup is about 4 rho2,
  // so a violated hinted inequality is not a refutation.
  const ConditionOutcome o = check_I1(p, 0.01, 10.0 / 33 * 1.001, k);
  CHECK(o.entries[1].margin < 0.0);
  CHECK(o.entries[1].verdict == Verdict::Inconclusive);
  CHECK(o.verdict == Verdict::Inconclusive);
}

TEST_CASE("I0 on the sign-changing example") {
  const SystemProblem p = fixtures::sec3_problem();
  const ConstantsTable& k = sec3_constants();
  const ConditionOutcome ok = check_I0(p, 700.0, 600.0, k);
  CHECK(ok.verdict == Verdict::Holds);
  REQUIRE(ok.entries.size() == 4);
  CHECK(ok.entries[0].rhs == doctest::Approx(262144.0 / 7203));
  CHECK(ok.entries[0].lhs == doctest::Approx(9.0 / 16 * 700));
  CHECK(check_I0(p, 1.0, 1.0, k).verdict == Verdict::Fails);
  CHECK(check_I0(p, 10616832.0 / 16807 * 1.001, 1024000.0 / 1859 * 1.001, k).verdict ==
        Verdict::Holds);
  CHECK(check_I0(p, 10616832.0 / 16807 * 0.999, 600.0, k).verdict == Verdict::Fails);
}

TEST_CASE("I1 is antitone in rho along a ladder") {
  const SystemProblem p = fixtures::sec3_problem();
  const ConstantsTable& k = sec3_constants();
  bool seen_holds = false;
  for (int j = 10; j >= 1; --j) {
    const double rho = 0.05 * j;
    const Verdict v = check_I1(p, rho, rho, k).verdict;
    if (seen_holds) CHECK(v == Verdict::Holds);
    if (v == Verdict::Holds) seen_holds = true;
  }
  CHECK(seen_holds);
}

TEST_CASE("homogeneous f gives a radius-independent sup") {
  const SystemProblem p =
      fixtures::with_f(fixtures::sec3_problem(), "abs(u1) + 2*abs(v2) - t*u2", "max(abs(v1), abs(u2))");
  ConditionOptions o;
  o.hints = HintMode::Ignore;
  for (int i = 1; i <= 2; ++i) {
    const double ref = sup_f_rho(p, i, 1.0, 1.0, o).value;
    for (double rho : {1e-3, 0.25, 7.0, 1e4})
      CHECK(std::fabs(sup_f_rho(p, i, rho, rho, o).value - ref) <= 1e-12 * std::fabs(ref));
  }
}

TEST_CASE("grid sup alone never certifies I1") {
  // A bump of width 1e-3 centred between grid nodes: the grid misses it.
  const SystemProblem p = fixtures::with_f(fixtures::sec3_problem(),
                                           "1e6*exp(-((u1 - 0.123)/0.001)^2)", "0");
  const ConditionOutcome o = check_I1(p, 1.0, 1.0, sec3_constants());
  CHECK(o.entries[0].bound_source == BoundSource::GridEstimate);
  CHECK(o.entries[0].lhs < 1e-3);
  CHECK(o.entries[0].verdict == Verdict::Inconclusive);
  CHECK(o.verdict == Verdict::Inconclusive);
}

TEST_CASE("grid inf alone never certifies I0") {
  const SystemProblem p =
      fixtures::with_f(fixtures::sec3_problem(), "1e6*(u1^2 + 1)", "1e6*(v1^2 + 1)");
  const ConditionOutcome o = check_I0(p, 1.0, 1.0, sec3_constants());
  for (const auto& e : o.entries) {
    CHECK(e.margin > 0.0);
    CHECK(e.verdict == Verdict::Inconclusive);
  }
  CHECK(o.verdict == Verdict::Inconclusive);
}

TEST_CASE("certify S2 on the sign-changing example") {
  const SystemProblem p = fixtures::sec3_problem();
  const std::vector<RadiiPair> ladder{{0.03, 0.3}, {700.0, 600.0}};
  const Certificate c = certify(p, Scenario::S2, ladder, sec3_constants());
  CHECK(c.verdict == Verdict::Holds);
  CHECK(c.promised_solutions == 1);
  REQUIRE(c.outcomes.size() == 2);
  CHECK(c.outcomes[0].id == ConditionId::I1);
  CHECK(c.outcomes[1].id == ConditionId::I0);
  for (const auto& o : c.outcomes) CHECK(o.verdict == Verdict::Holds);
  REQUIRE(c.annuli.size() == 1);
  CHECK(c.annuli[0].inner.rho1 < c.annuli[0].outer.rho1);
  CHECK(c.annuli[0].inner.rho2 < c.annuli[0].outer.rho2);
  CHECK(c.rigorous);
}

TEST_CASE("ladder validation") {
  const SystemProblem p = fixtures::sec3_problem();
  const ConstantsTable& k = sec3_constants();
  // S1 needs rho_i / c_i < r_i; c1 = 3/4.
  const std::vector<RadiiPair> s1_bad{{0.75, 0.01}, {1.0, 600.0}};
  try {
    (void)certify(p, Scenario::S1, s1_bad, k);
    FAIL("expected LadderViolation");
  } catch (const LadderViolation& e) {
    CHECK(std::string(e.what()).find("rho_1/c_1 < r_1") != std::string::npos);
  }
  const std::vector<RadiiPair> s2_bad{{700.0, 600.0}, {0.03, 0.3}};
  CHECK_THROWS_AS(certify(p, Scenario::S2, s2_bad, k), LadderViolation);
  const std::vector<RadiiPair> short_ladder{{0.03, 0.3}, {700.0, 600.0}};
  CHECK_THROWS_AS(certify(p, Scenario::S3, short_ladder, k), LadderViolation);
  CHECK_THROWS_AS(certify(p, Scenario::HatS2, short_ladder, k), Error);
  CHECK(ladder_length(Scenario::S1) == 2);
  CHECK(ladder_length(Scenario::S4) == 3);
  CHECK(ladder_length(Scenario::S6) == 4);
  CHECK(ladder_length(Scenario::HatS1) == 2);
}

TEST_CASE("certify S4 with three radii pairs") {
  const SystemProblem p = fixtures::sec3_problem();
  const std::vector<RadiiPair> ladder{{0.03, 0.3}, {700.0, 600.0}, {1000.0, 900.0}};
  // The middle I0 holds, the outer I1 cannot hold at such radii.
  const Certificate c = certify(p, Scenario::S4, ladder, sec3_constants());
  CHECK(c.outcomes.size() == 3);
  CHECK(c.verdict == Verdict::Fails);
  CHECK(c.promised_solutions == 0);
}

TEST_CASE("scenario names round-trip") {
  for (Scenario s : {Scenario::S1, Scenario::S2, Scenario::S3, Scenario::S4, Scenario::S5,
                     Scenario::S6, Scenario::HatS1, Scenario::HatS2, Scenario::Nonexistence})
    CHECK(scenario_from_string(to_string(s)) == s);
  CHECK_FALSE(scenario_from_string("S7"));
}

TEST_CASE("non-existence: sub-critical linear growth is supported") {
  const SystemProblem base = fixtures::sec3_problem();
  const ConstantsTable& k = sec3_constants();
  const SystemProblem p = with_f(base, num(k(1).m.value / 2) + "*abs(u1)",
                                 num(k(2).m.value / 2) + "*abs(v1)");
  const Box4 box{Interval{-10, 10}, {-10, 10}, {-10, 10}, {-10, 10}};
  const Certificate c = check_nonexistence(p, k, box, 11);
  CHECK(c.verdict == Verdict::Holds);
  CHECK(c.promised_solutions == 0);
  CHECK_FALSE(c.rigorous);
  REQUIRE(c.alternatives.size() == 4);
  CHECK(c.alternatives[0].supported);
  CHECK(c.alternatives[2].supported);
  CHECK_FALSE(c.alternatives[1].supported);
  CHECK(c.alternatives[0].samples == 11LL * 10 * 11 * 11 * 11);
  CHECK_FALSE(c.notes.empty());
}

TEST_CASE("non-existence: super-critical growth supports the second alternative") {
  SystemProblem base = fixtures::sec3_problem();
  base.cone = ConeVariant::NonNegative;
  const ConstantsTable& k = sec3_constants();
  const double slope = 2 * k(1).M.value / base.components[0].envelope.c;
  const SystemProblem p =
      with_f(base, num(slope) + "*u1", num(k(2).m.value / 2) + "*abs(v1)");
  const Box4 box{Interval{0, 10}, {0, 10}, {0, 10}, {0, 10}};
  const Certificate c = check_nonexistence(p, k, box, 11);
  CHECK_FALSE(c.alternatives[0].supported);
  CHECK(c.alternatives[1].supported);
  CHECK(c.alternatives[2].supported);
  CHECK(c.verdict == Verdict::Holds);
}

TEST_CASE("non-existence: the sign-changing example is not supported") {
  const Box4 box{Interval{-10, 10}, {-10, 10}, {-10, 10}, {-10, 10}};
  const Certificate c = check_nonexistence(fixtures::sec3_problem(), sec3_constants(), box, 11);
  CHECK(c.verdict == Verdict::Fails);
  CHECK_FALSE(c.alternatives[0].supported);
  CHECK_FALSE(c.alternatives[1].supported);
  CHECK(c.alternatives[0].worst_margin <= 0.0);
  CHECK(c.alternatives[0].worst_location.size() == 5);
  CHECK_THROWS_AS(check_nonexistence(fixtures::sec3_problem(), sec3_constants(), box, 1), Error);
}

}
