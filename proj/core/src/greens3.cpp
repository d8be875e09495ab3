#include "hamcert/greens3.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <tuple>

#include "hamcert/errors.hpp"

namespace hamcert {

namespace {

void require_valid(const GreenParams& p) {
  if (!p.valid()) throw ParamError("green parameters need 0 < eta < 1 and 1 < alpha < 1/eta");
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double eval1(const Expr& e, double x) {
  const double v[1] = {x};
  return e.eval(v);
}

}  // namespace

KernelSpec build_kernel(const GreenParams& p) {
  require_valid(p);
  return KernelSpec::green(p);
}

double default_c(const GreenParams& p) {
  require_valid(p);
  const double a = p.alpha, e = p.eta;
  return e * e / (2.0 * a * a * (1.0 + a)) * std::min(a - 1.0, 1.0);
}

Envelope default_envelope(const GreenParams& p) {
  require_valid(p);
  const double a = p.alpha, e = p.eta;
  const double q = 1.0 - a * e;
  Expr phi = Expr::parse(num((1.0 + a) / q) + "*s*(1-s)", vars::profile);
  Expr psi = Expr::parse("(1-s)*" + num(1.0 / q), vars::profile);
  const double lo = e / a;
  // min(alpha eta, eta) is always eta here since alpha > 1; kept literal.
  const double d = std::min(a * e, e);
  return Envelope::make(std::move(phi), std::move(psi), lo, e, lo, e, default_c(p), d);
}

double BranchJumps::max() const {
  return std::max({value_at_t, value_at_eta, dt_at_t, dt_at_eta});
}

BranchJumps branch_jumps(const GreenParams& p, double t) {
  using B = GreenBranch;
  BranchJumps j;
  auto gap = [&](B x, B y, double s) {
    return std::pair{std::fabs(green_branch_value(p, x, t, s) - green_branch_value(p, y, t, s)),
                     std::fabs(green_branch_dt(p, x, t, s) - green_branch_dt(p, y, t, s))};
  };
  if (t <= p.eta) {
    std::tie(j.value_at_t, j.dt_at_t) = gap(B::LowS, B::BetweenTEta, t);
    std::tie(j.value_at_eta, j.dt_at_eta) = gap(B::BetweenTEta, B::HighS, p.eta);
  } else {
    std::tie(j.value_at_t, j.dt_at_t) = gap(B::BetweenEtaT, B::HighS, t);
    std::tie(j.value_at_eta, j.dt_at_eta) = gap(B::LowS, B::BetweenEtaT, p.eta);
  }
  return j;
}

ResidualReport verify_bvp(const GreenParams& p, const Expr& h, int n_grid) {
  require_valid(p);
  if (n_grid < 101 || n_grid % 2 == 0) throw Error("verify_bvp: n_grid must be odd and >= 101");
  const KernelSpec k = build_kernel(p);
  const QuadOptions qo{1e-13, 10000};

  auto w_at = [&](double t) {
    const auto bps = k.breakpoints(t);
    return integrate([&](double s) { return k.value(t, s) * eval1(h, s); }, 0.0, 1.0, bps, qo)
        .value;
  };
  auto dw_at = [&](double t) {
    const auto bps = k.breakpoints(t);
    return integrate([&](double s) { return k.dt(t, s) * eval1(h, s); }, 0.0, 1.0, bps, qo)
        .value;
  };

  const double step = 1.0 / (n_grid - 1);
  std::vector<double> ts(n_grid), w(n_grid);
  for (int j = 0; j < n_grid; ++j) {
    ts[j] = j == n_grid - 1 ? 1.0 : j * step;
    w[j] = w_at(ts[j]);
  }

  ResidualReport r;
  const double denom = 8.0 * step * step * step;
  for (int j = 3; j + 3 < n_grid; ++j) {
    if (std::fabs(ts[j] - p.eta) <= 3.0 * step * (1.0 + 1e-9)) continue;
    const double d3 = (-w[j + 3] + 8.0 * w[j + 2] - 13.0 * w[j + 1] + 13.0 * w[j - 1] -
                       8.0 * w[j - 2] + w[j - 3]) /
                      denom;
    const double res = std::fabs(-d3 - eval1(h, ts[j]));
    ++r.checked_nodes;
    if (res > r.max_ode_residual) {
      r.max_ode_residual = res;
      r.worst_t = ts[j];
    }
  }
  r.w0 = std::fabs(w[0]);
  r.dw0 = std::fabs(dw_at(0.0));
  r.nonlocal = std::fabs(dw_at(1.0) - p.alpha * dw_at(p.eta));
  r.passed = r.max_ode_residual < r.ode_threshold && r.w0 <= r.bc_threshold &&
             r.dw0 <= r.bc_threshold && r.nonlocal <= r.bc_threshold;
  return r;
}

AssumptionReport check_A_star_4(const GreenParams& p, const Expr& g, QuadOptions opts) {
  const Envelope env = default_envelope(p);
  Component comp;
  comp.kernel = build_kernel(p);
  comp.envelope = env;
  comp.weight = g;
  AssumptionReport rep = verify_A4(comp, opts);
  rep.name = "A*4";
  return rep;
}

}  // namespace hamcert
