#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "hamcert/errors.hpp"
#include "hamcert/greens3.hpp"

using namespace hamcert;

namespace {

const GreenParams kFamily[] = {{1.5, 0.5}, {2.0, 1.0 / 3}, {1.25, 0.7}};

Component green_component(const GreenParams& p) {
  Component c;
  c.kernel = build_kernel(p);
  c.envelope = default_envelope(p);
  c.weight = fixtures::prof("1");
  c.f = fixtures::nl("1");
  return c;
}

}  // namespace

TEST_SUITE("greens3") {

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(build_kernel({1.0, 0.5}), ParamError);
  CHECK_THROWS_AS(build_kernel({2.0, 0.5}), ParamError);
  CHECK_THROWS_AS(build_kernel({1.5, 0.0}), ParamError);
  CHECK_THROWS_AS(default_envelope({1.5, 1.0}), ParamError);
}

TEST_CASE("kernel vanishes at t = 0") {
  const KernelSpec k = build_kernel({1.5, 0.5});
  for (double s = 0.0; s <= 1.0; s += 0.05) CHECK(k.value(0.0, s) == 0.0);
}

TEST_CASE("nonlocal boundary identity for alpha = 2, eta = 1/3") {
  const KernelSpec k = build_kernel({2.0, 1.0 / 3});
  for (double s = 0.0; s <= 1.0; s += 1.0 / 64)
    CHECK(std::fabs(k.dt(1.0, s) - 2.0 * k.dt(1.0 / 3, s)) < 1e-14);
}

TEST_CASE("branch 4 hand value") {
  const KernelSpec k = build_kernel({1.5, 0.5});
  CHECK(k.value(0.25, 0.75) == doctest::Approx(1.0 / 32).epsilon(1e-15));
  CHECK(green_branch(GreenParams{1.5, 0.5}, 0.25, 0.75) == GreenBranch::HighS);
}

TEST_CASE("default envelope constants") {
  const Envelope e2 = default_envelope({2.0, 1.0 / 3});
  CHECK(e2.c == doctest::Approx(1.0 / 216).epsilon(1e-15));
  CHECK(e2.a == doctest::Approx(1.0 / 6));
  CHECK(e2.b == doctest::Approx(1.0 / 3));
  const Envelope e1 = default_envelope({1.5, 0.5});
  CHECK(e1.d == 0.5);
  CHECK(e1.c == doctest::Approx(1.0 / 90).epsilon(1e-15));
  CHECK(default_c({1.5, 0.5}) == doctest::Approx(1.0 / 90).epsilon(1e-15));
  const double phi_half = e1.phi.eval({{"s", 0.5}});
  CHECK(phi_half == doctest::Approx(10.0 * 0.25));
  CHECK(e1.psi.eval({{"s", 0.0}}) == doctest::Approx(4.0));
}

TEST_CASE("branch continuity at s = t and s = eta") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double eta = 0.05 + 0.9 * u(rng);
    const double alpha = 1.0 + (1.0 / eta - 1.0) * (0.02 + 0.96 * u(rng));
    const GreenParams p{alpha, eta};
    REQUIRE(p.valid());
    for (int n = 0; n < 1000; ++n) CHECK(branch_jumps(p, u(rng)).max() < 1e-10);
  }
  for (const GreenParams& p : kFamily)
    for (int j = 0; j <= 200; ++j) CHECK(branch_jumps(p, j / 200.0).max() < 1e-10);
}

TEST_CASE("positivity and upper bounds on a 200 x 200 grid") {
  for (const GreenParams& p : kFamily) {
    const KernelSpec k = build_kernel(p);
    const Envelope e = default_envelope(p);
    double worst_k = 0.0, worst_dt = 0.0, neg_k = 0.0, neg_dt = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double t = i / 199.0;
      for (int j = 0; j < 200; ++j) {
        const double s = j / 199.0;
        worst_k = std::max(worst_k, k.value(t, s) - e.phi.eval({{"s", s}}));
        worst_dt = std::max(worst_dt, k.dt(t, s) - e.psi.eval({{"s", s}}));
        neg_k = std::min(neg_k, k.value(t, s));
        neg_dt = std::min(neg_dt, k.dt(t, s));
      }
    }
    CHECK(worst_k <= 1e-12);
    CHECK(worst_dt <= 1e-12);
    CHECK(neg_k >= -1e-15);
    CHECK(neg_dt >= -1e-15);
  }
}

TEST_CASE("k >= c phi on [eta/alpha, eta] with c from the closed form") {
  for (const GreenParams& p : kFamily) {
    const AssumptionReport r = verify_A3(green_component(p), 200, 200);
    bool found = false;
    for (const auto& c : r.checks)
      if (c.label == "k >= c*phi on [a,b]") {
        found = true;
        CHECK(c.passed);
      }
    CHECK(found);
  }
}

// The derivative lower bound dk/dt >= d psi cannot hold near s = 0: every
// branch of dk/dt that applies there is proportional to s, while psi(0) > 0.
TEST_CASE("derivative lower bound fails near s = 0") {
  for (const GreenParams& p : kFamily) {
    const KernelSpec k = build_kernel(p);
    const Envelope e = default_envelope(p);
    const double t = 0.5 * (e.gamma + e.delta);
    CHECK(k.dt(t, 0.0) == 0.0);
    CHECK(e.d * e.psi.eval({{"s", 0.0}}) > 0.0);
    const AssumptionReport r = verify_A3(green_component(p), 200, 200);
    CHECK_FALSE(r.passed);
    for (const auto& c : r.checks)
      if (c.label == "dk/dt >= d*psi on [gamma,delta]") {
        CHECK_FALSE(c.passed);
        CHECK(c.location[1] == 0.0);
      } else {
        CHECK(c.passed);
      }
  }
}

TEST_CASE("finite differences agree with the derivative evaluator") {
  for (const GreenParams& p : kFamily) {
    const DerivativeCheck d = check_derivative(build_kernel(p), 41);
    CHECK(d.passed);
  }
}

TEST_CASE("BVP residuals for h = 1 and h = s") {
  const Expr one = fixtures::prof("1"), lin = fixtures::prof("s"), zero = fixtures::prof("0");
  for (const GreenParams& p : kFamily) {
    for (const Expr* h : {&one, &lin}) {
      const ResidualReport r = verify_bvp(p, *h, 2001);
      CHECK(r.passed);
      CHECK(r.max_ode_residual < 1e-4);
      CHECK(r.w0 < 1e-8);
      CHECK(r.dw0 < 1e-8);
      CHECK(r.nonlocal < 1e-8);
      CHECK(r.checked_nodes > 1900);
    }
    const ResidualReport z = verify_bvp(p, zero, 201);
    CHECK(z.max_ode_residual == 0.0);
    CHECK(z.w0 == 0.0);
    CHECK(z.nonlocal == 0.0);
  }
  CHECK_THROWS_AS(verify_bvp({1.5, 0.5}, one, 100), Error);
  CHECK_THROWS_AS(verify_bvp({1.5, 0.5}, one, 51), Error);
  CHECK_THROWS_AS(verify_bvp({1.0, 0.5}, one, 201), ParamError);
}

TEST_CASE("A*4 integrals of the three-point example") {
  const AssumptionReport a = check_A_star_4({1.5, 0.5}, fixtures::prof("1"));
  CHECK(a.passed);
  CHECK(a.name == "A*4");
  CHECK(std::fabs(a.checks[0].value - 65.0 / 162) < 1e-12);
  CHECK(std::fabs(a.checks[1].value - 7.0 / 18) < 1e-12);
  const AssumptionReport b = check_A_star_4({2.0, 1.0 / 3}, fixtures::prof("1"));
  CHECK(b.passed);
  CHECK(std::fabs(b.checks[0].value - 5.0 / 18) < 1e-12);
  CHECK(std::fabs(b.checks[1].value - 3.0 / 8) < 1e-12);
  CHECK_FALSE(check_A_star_4({1.5, 0.5}, fixtures::prof("0")).passed);
}

}
