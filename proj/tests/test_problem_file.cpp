#include <string>

#include "doctest.h"
#include "fixtures.hpp"
#include "hamcert/constants.hpp"
#include "hamcert/errors.hpp"
#include "hamcert/problem_file.hpp"

using namespace hamcert;

namespace {

const char* kMinimal = R"(schema: 1
cone:
  variant: NonNegative
component.1:
  kernel: green(3/2, 1/2)
  f: "1 + u1^2"
component.2:
  kernel: "t*s"
  kernel_dt: "s"
  phi: "s"
  psi: "s"
  a: 1/4
  b: 1
  c: 1/4
  gamma: 0
  delta: 1
  d: 1
  f: "v1^2"
)";

std::string replace(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

void expect_error_at(const std::string& text, std::size_t line, const std::string& fragment) {
  try {
    (void)parse_problem(text, "t.yaml");
    FAIL("expected ProblemFileError");
  } catch (const ProblemFileError& e) {
    CAPTURE(e.what());
    CHECK(e.line() == line);
    CHECK(std::string(e.what()).find(fragment) != std::string::npos);
  }
}

}  // namespace

TEST_SUITE("problem_file") {

TEST_CASE("minimal file with a green kernel and defaulted envelope") {
  const ProblemFile pf = parse_problem(kMinimal);
  CHECK(pf.schema == 1);
  CHECK(pf.problem.cone == ConeVariant::NonNegative);
  const Component& c1 = pf.problem.component(1);
  REQUIRE(c1.kernel.is_green());
  CHECK(c1.envelope.c == doctest::Approx(1.0 / 90));
  CHECK(c1.envelope.a == doctest::Approx(1.0 / 3));
  CHECK(c1.weight.eval({{"s", 0.3}}) == 1.0);
  CHECK_FALSE(pf.notes.empty());
  CHECK_FALSE(pf.check.scenario);
  CHECK(pf.solver.n == 401);
  CHECK(pf.solver.init == InitKind::Zero);
  const Component& c2 = pf.problem.component(2);
  CHECK(c2.envelope.a == 0.25);
  CHECK(c2.kernel.value(0.5, 0.5) == 0.25);
}

TEST_CASE("golden files load") {
  const ProblemFile sc = load_problem(fixtures::problems_dir() + "/exsystch.yaml");
  CHECK(sc.check.scenario == Scenario::S2);
  REQUIRE(sc.check.ladder.size() == 2);
  CHECK(sc.check.ladder[1].rho1 == 700.0);
  CHECK(sc.problem.component(1).envelope.d == doctest::Approx(7.0 / 18));
  CHECK(sc.problem.component(2).hints.inf_star);
  const ConstantsTable t = compute_constants(sc.problem);
  CHECK(t(1).M.reciprocal == doctest::Approx(7203.0 / 262144).epsilon(1e-12));

  const ProblemFile ex = load_problem(fixtures::problems_dir() + "/ex_green.yaml");
  CHECK(ex.check.scenario == Scenario::HatS2);
  CHECK(ex.problem.cone == ConeVariant::NonNegativeNonDecreasing);
  CHECK(ex.problem.component(1).kernel.is_green());
  CHECK(ex.problem.component(1).envelope.c == doctest::Approx(1.0 / 45));
  CHECK(ex.check.f_box);
}

TEST_CASE("unknown keys are rejected with their position") {
  expect_error_at(replace(kMinimal, "  f: \"v1^2\"\n", "  f: \"v1^2\"\n  colour: red\n"), 19,
                  "colour");
  try {
    (void)parse_problem(replace(kMinimal, "cone:\n", "cone:\n  shape: round\n"));
    FAIL("expected ProblemFileError");
  } catch (const ProblemFileError& e) {
    CHECK(e.line() == 3u);
    CHECK(e.column() == 3u);
  }
}

TEST_CASE("structural errors") {
  CHECK_THROWS_AS(parse_problem("schema: 2\n"), ProblemFileError);
  CHECK_THROWS_AS(parse_problem("schema: [1\n"), ProblemFileError);
  CHECK_THROWS_AS(parse_problem(replace(kMinimal, "NonNegative", "Round")), ProblemFileError);
  CHECK_THROWS_AS(parse_problem(replace(kMinimal, "  kernel_dt: \"s\"\n", "")), ProblemFileError);
  CHECK_THROWS_AS(parse_problem(replace(kMinimal, "green(3/2, 1/2)", "green(3, 1/2)")), Error);
  CHECK_THROWS_AS(parse_problem(replace(kMinimal, "  f: \"1 + u1^2\"\n",
                                        "  f: \"1 + u1^2\"\n  kernel_dt: \"s\"\n")),
                  ProblemFileError);
  CHECK_THROWS_AS(parse_problem(replace(kMinimal, "\"1 + u1^2\"", "\"1 + rho1\"")), Error);
}

TEST_CASE("check section validation") {
  const std::string base = std::string(kMinimal) + "check:\n  scenario: S2\n";
  CHECK_NOTHROW(parse_problem(base + "  ladder: [[0.1, 0.1], [10, 10]]\n"));
  CHECK_THROWS_AS(parse_problem(base + "  ladder: [[0.1, 0.1]]\n"), ProblemFileError);
  CHECK_THROWS_AS(parse_problem(base + "  ladder: [[0.1, -1], [10, 10]]\n"), ProblemFileError);
  CHECK_THROWS_AS(parse_problem(base + "  ladder: [[0.1, 0.1], [10, 10]]\n  hints: maybe\n"),
                  ProblemFileError);
  const ProblemFile pf = parse_problem(base +
                                       "  ladder: [[1/10, 0.1], [10, 10]]\n"
                                       "  nonexistence_box: [[-1, 1], [-2, 2], [0, 1], [0, 1]]\n");
  CHECK(pf.check.ladder[0].rho1 == 0.1);
  REQUIRE(pf.check.nonexistence_box);
  CHECK((*pf.check.nonexistence_box)[1].lo == -2.0);
}

TEST_CASE("solver section") {
  const ProblemFile pf = parse_problem(std::string(kMinimal) +
                                       "solver: { n: 201, init: random, seed: 7, scale: 2 }\n");
  CHECK(pf.solver.n == 201);
  CHECK(pf.solver.init == InitKind::Random);
  CHECK(pf.solver.seed == 7u);
  CHECK(pf.solver.scale == 2.0);
  CHECK_THROWS_AS(parse_problem(std::string(kMinimal) + "solver: { n: 50 }\n"), ProblemFileError);
  CHECK_THROWS_AS(parse_problem(std::string(kMinimal) + "solver: { init: warm }\n"),
                  ProblemFileError);
}

TEST_CASE("missing file") {
  CHECK_THROWS_AS(load_problem("/nonexistent/problem.yaml"), Error);
}

}
