#include "hamcert/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>

#include "hamcert/errors.hpp"

namespace hamcert {

GridPair GridPair::zeros(int n) {
  GridPair p;
  p.n = n;
  p.u.assign(static_cast<std::size_t>(std::max(n, 0)), 0.0);
  p.du = p.v = p.dv = p.u;
  return p;
}

void GridPair::validate() const {
  if (n < kMinGridNodes)
    throw ParamError("grid needs at least " + std::to_string(kMinGridNodes) + " nodes, got " +
                     std::to_string(n));
  const auto sz = static_cast<std::size_t>(n);
  if (u.size() != sz || du.size() != sz || v.size() != sz || dv.size() != sz)
    throw ParamError("grid arrays must all have length n");
  for (const auto* a : {&u, &du, &v, &dv})
    for (double x : *a)
      if (!std::isfinite(x)) throw ParamError("grid arrays must be finite");
}

namespace {

double sup_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::fabs(x));
  return m;
}

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::fabs(a[j] - b[j]));
  return m;
}

constexpr double kGLx[5] = {-0.906179845938663992797626878299, -0.538469310105683091036314420700,
                            0.0, 0.538469310105683091036314420700,
                            0.906179845938663992797626878299};
constexpr double kGLw[5] = {0.236926885056189087514264040720, 0.478628670499366468041291514836,
                            0.568888888888888888888888888889, 0.478628670499366468041291514836,
                            0.236926885056189087514264040720};

}  // namespace

Norms norms(const GridPair& p) {
  return {sup_abs(p.u), sup_abs(p.du), sup_abs(p.v), sup_abs(p.dv)};
}

double distance(const GridPair& a, const GridPair& b) {
  return std::max({sup_diff(a.u, b.u), sup_diff(a.du, b.du), sup_diff(a.v, b.v),
                   sup_diff(a.dv, b.dv)});
}

HammersteinOperator::HammersteinOperator(SystemProblem problem, int n)
    : problem_(std::move(problem)), n_(n) {
  if (n < kMinGridNodes)
    throw ParamError("grid needs at least " + std::to_string(kMinGridNodes) + " nodes, got " +
                     std::to_string(n));
  const double h = 1.0 / (n - 1);

  // Segment ends: grid nodes plus any kernel breakpoint strictly inside a cell.
  std::vector<double> cuts;
  for (int i = 1; i <= 2; ++i)
    for (int j = 0; j < n; ++j)
      for (double b : problem_.component(i).kernel.breakpoints(j * h)) {
        const double r = b / h;
        if (std::fabs(r - std::round(r)) > 1e-9) cuts.push_back(b);
      }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double x, double y) { return std::fabs(x - y) <= 1e-14; }),
             cuts.end());

  std::vector<double> w;
  auto add_segment = [&](double lo, double hi, int cell) {
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    for (int k = 0; k < 5; ++k) {
      const double s = mid + half * kGLx[k];
      s_.push_back(s);
      w.push_back(half * kGLw[k]);
      cell_.push_back(cell);
      frac_.push_back((s - cell * h) / h);
    }
  };
  std::size_t ci = 0;
  for (int c = 0; c + 1 < n; ++c) {
    double lo = c * h;
    const double hi = c + 2 == n ? 1.0 : (c + 1) * h;
    while (ci < cuts.size() && cuts[ci] < hi) {
      if (cuts[ci] > lo) {
        add_segment(lo, cuts[ci], c);
        lo = cuts[ci];
      }
      ++ci;
    }
    add_segment(lo, hi, c);
  }

  const std::size_t Q = s_.size();
  for (int i = 0; i < 2; ++i) {
    const Component& comp = problem_.components[static_cast<std::size_t>(i)];
    wg_[i].resize(Q);
    for (std::size_t q = 0; q < Q; ++q) {
      const double s1[1] = {s_[q]};
      wg_[i][q] = w[q] * comp.weight.eval(s1);
    }
    k_[i].resize(static_cast<std::size_t>(n) * Q);
    kt_[i].resize(static_cast<std::size_t>(n) * Q);
    for (int j = 0; j < n; ++j) {
      const double t = j == n - 1 ? 1.0 : j * h;
      double* kr = &k_[i][static_cast<std::size_t>(j) * Q];
      double* ktr = &kt_[i][static_cast<std::size_t>(j) * Q];
      for (std::size_t q = 0; q < Q; ++q) {
        kr[q] = comp.kernel.value(t, s_[q]);
        ktr[q] = comp.kernel.dt(t, s_[q]);
      }
    }
  }
}

void HammersteinOperator::forcing(int i, const GridPair& p, std::vector<double>& out) const {
  const Component& comp = problem_.components[static_cast<std::size_t>(i)];
  const std::size_t Q = s_.size();
  out.resize(Q);
  if (comp.f.is_constant()) {
    const double c = comp.f.eval(std::span<const double>{});
    for (std::size_t q = 0; q < Q; ++q) out[q] = wg_[i][q] * c;
    return;
  }
  double x[5];
  for (std::size_t q = 0; q < Q; ++q) {
    const auto c = static_cast<std::size_t>(cell_[q]);
    const double a = frac_[q], b = 1.0 - a;
    x[0] = s_[q];
    x[1] = b * p.u[c] + a * p.u[c + 1];
    x[2] = b * p.du[c] + a * p.du[c + 1];
    x[3] = b * p.v[c] + a * p.v[c + 1];
    x[4] = b * p.dv[c] + a * p.dv[c + 1];
    out[q] = wg_[i][q] * comp.f.eval(x);
  }
}

GridPair HammersteinOperator::apply(const GridPair& p) const {
  p.validate();
  if (p.n != n_) throw ParamError("grid size does not match the operator");
  const std::size_t Q = s_.size();
  GridPair out = GridPair::zeros(n_);
  std::vector<double> F;
  for (int i = 0; i < 2; ++i) {
    forcing(i, p, F);
    auto& w = i == 0 ? out.u : out.v;
    auto& dw = i == 0 ? out.du : out.dv;
    for (int j = 0; j < n_; ++j) {
      const double* kr = &k_[i][static_cast<std::size_t>(j) * Q];
      const double* ktr = &kt_[i][static_cast<std::size_t>(j) * Q];
      double acc = 0.0, acct = 0.0;
      for (std::size_t q = 0; q < Q; ++q) {
        acc += kr[q] * F[q];
        acct += ktr[q] * F[q];
      }
      w[static_cast<std::size_t>(j)] = acc;
      dw[static_cast<std::size_t>(j)] = acct;
    }
  }
  return out;
}

GridPair apply_T(const SystemProblem& problem, const GridPair& p) {
  p.validate();
  return HammersteinOperator(problem, p.n).apply(p);
}

namespace {

void check_blowup(const GridPair& p, double bound, int iteration) {
  for (const auto* a : {&p.u, &p.du, &p.v, &p.dv})
    for (double x : *a)
      if (!(std::fabs(x) <= bound))
        throw Divergence("Picard iterate " + std::to_string(iteration) +
                         " left the blow-up bound " + std::to_string(bound));
}

double fd_mismatch(const std::vector<double>& w, const std::vector<double>& dw, double h) {
  double m = 0.0;
  for (std::size_t j = 1; j + 1 < w.size(); ++j)
    m = std::max(m, std::fabs((w[j + 1] - w[j - 1]) / (2.0 * h) - dw[j]));
  return m;
}

}  // namespace

SolutionResult picard(const HammersteinOperator& op, const GridPair& init,
                      const PicardOptions& opts) {
  if (!(opts.theta > 0.0 && opts.theta <= 1.0)) throw ParamError("damping must lie in (0, 1]");
  if (!(opts.tol > 0.0)) throw ParamError("tolerance must be positive");
  if (opts.max_iter < 1) throw ParamError("max_iter must be at least 1");
  init.validate();

  SolutionResult r;
  GridPair x = init;
  double theta = opts.theta;
  double prev = std::numeric_limits<double>::infinity();
  int halvings = 0;
  for (int it = 1; it <= opts.max_iter; ++it) {
    GridPair y = op.apply(x);
    r.iterations = it;
    check_blowup(y, opts.blowup, it);
    const double res = distance(x, y);
    r.residual = res;
    if (res <= opts.tol) {
      r.converged = true;
      break;
    }
    if (res > prev && halvings < opts.max_halvings) {
      theta *= 0.5;
      ++halvings;
    }
    prev = res;
    if (theta == 1.0) {
      x = std::move(y);
    } else {
      for (auto [a, b] : {std::pair{&x.u, &y.u}, {&x.du, &y.du}, {&x.v, &y.v}, {&x.dv, &y.dv}})
        for (std::size_t j = 0; j < a->size(); ++j) (*a)[j] = (1.0 - theta) * (*a)[j] + theta * (*b)[j];
    }
    check_blowup(x, opts.blowup, it);
  }
  r.final_theta = theta;
  r.norms = norms(x);
  const double h = x.step();
  r.derivative_mismatch = std::max(fd_mismatch(x.u, x.du, h), fd_mismatch(x.v, x.dv, h));
  r.derivative_allowance = 10.0 * h * h * std::max({1.0, r.norms.u_c1(), r.norms.v_c1()});
  if (r.converged) {
    r.derivative_consistent = r.derivative_mismatch <= r.derivative_allowance;
    if (!r.derivative_consistent)
      r.notes.push_back("central differences of u, v disagree with the iterated derivatives");
    r.trivial = std::max(r.norms.u_c1(), r.norms.v_c1()) <= opts.tol;
    if (r.trivial)
      r.notes.push_back("trivial fixed point found; certificate promises a nontrivial one "
                        "elsewhere in the annulus");
  } else {
    r.notes.push_back("not converged after " + std::to_string(r.iterations) + " iterations");
  }
  r.pair = std::move(x);
  return r;
}

SolutionResult picard(const SystemProblem& problem, const GridPair& init, double theta,
                      double tol, int max_iter) {
  init.validate();
  PicardOptions o;
  o.theta = theta;
  o.tol = tol;
  o.max_iter = max_iter;
  return picard(HammersteinOperator(problem, init.n), init, o);
}

ConeReport cone_membership(const GridPair& p, const SystemProblem& problem) {
  p.validate();
  ConeReport rep;
  rep.worst_slack = std::numeric_limits<double>::infinity();
  auto add = [&](std::string label, int i, double lhs, double rhs, double scale) {
    ConeCheck c;
    c.label = std::move(label);
    c.component = i;
    c.lhs = lhs;
    c.rhs = rhs;
    c.slack = lhs - rhs;
    c.passed = c.slack >= -kConeTolerance * std::max(1.0, scale);
    rep.passed = rep.passed && c.passed;
    rep.worst_slack = std::min(rep.worst_slack, c.slack);
    rep.checks.push_back(std::move(c));
  };
  auto min_on = [&](const std::vector<double>& w, double lo, double hi) {
    double m = std::numeric_limits<double>::infinity();
    for (int j = 0; j < p.n; ++j) {
      const double t = p.node(j);
      if (t >= lo - 1e-12 && t <= hi + 1e-12) m = std::min(m, w[static_cast<std::size_t>(j)]);
    }
    return m;
  };
  for (int i = 1; i <= 2; ++i) {
    const Envelope& env = problem.component(i).envelope;
    const auto& w = i == 1 ? p.u : p.v;
    const auto& dw = i == 1 ? p.du : p.dv;
    const double nw = sup_abs(w), ndw = sup_abs(dw);
    const std::string name = i == 1 ? "u" : "v";
    double m = min_on(w, env.a, env.b);
    if (std::isfinite(m)) add("min_[a,b] " + name + " >= c ||" + name + "||_C", i, m, env.c * nw, nw);
    m = min_on(dw, env.gamma, env.delta);
    if (std::isfinite(m))
      add("min_[gamma,delta] " + name + "' >= d ||" + name + "'||_C", i, m, env.d * ndw, ndw);
    if (problem.cone != ConeVariant::SignChanging)
      add(name + " >= 0", i, *std::min_element(w.begin(), w.end()), 0.0, nw);
    if (problem.cone == ConeVariant::NonNegativeNonDecreasing)
      add(name + "' >= 0", i, *std::min_element(dw.begin(), dw.end()), 0.0, ndw);
  }
  if (rep.checks.empty()) rep.worst_slack = 0.0;
  return rep;
}

bool localization_check(const Norms& n, double rho1, double rho2, double r1, double r2) {
  if (!(rho1 > 0.0 && rho2 > 0.0 && r1 > 0.0 && r2 > 0.0))
    throw ParamError("localization radii must be positive");
  const double nu = n.u_c1(), nv = n.v_c1();
  return nu <= r1 && nv <= r2 && !(nu < rho1 && nv < rho2);
}

bool localization_check(const SolutionResult& r, double rho1, double rho2, double r1, double r2) {
  return localization_check(r.norms, rho1, rho2, r1, r2);
}

GridPair envelope_init(const SystemProblem& problem, int n, double lambda1, double lambda2) {
  GridPair p = GridPair::zeros(n);
  const double fd = 1e-6;
  for (int i = 1; i <= 2; ++i) {
    const Expr& phi = problem.component(i).envelope.phi;
    auto& w = i == 1 ? p.u : p.v;
    auto& dw = i == 1 ? p.du : p.dv;
    auto at = [&](double s) {
      const double x[1] = {s};
      return phi.eval(x);
    };
    for (int j = 0; j < n; ++j) {
      const double t = p.node(j);
      w[static_cast<std::size_t>(j)] = at(t);
      const double lo = std::max(0.0, t - fd), hi = std::min(1.0, t + fd);
      dw[static_cast<std::size_t>(j)] = (at(hi) - at(lo)) / (hi - lo);
    }
    const double scale = sup_abs(w);
    if (!(scale > 0.0)) throw EnvelopeError("phi" + std::to_string(i) + " vanishes on the grid");
    const double lambda = i == 1 ? lambda1 : lambda2;
    for (std::size_t j = 0; j < w.size(); ++j) {
      w[j] *= lambda / scale;
      dw[j] *= lambda / scale;
    }
  }
  p.validate();
  return p;
}

GridPair random_init(int n, std::uint64_t seed, double scale) {
  GridPair p = GridPair::zeros(n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> amp(-scale, scale);
  const double pi = std::acos(-1.0);
  for (auto [w, dw] : {std::pair{&p.u, &p.du}, {&p.v, &p.dv}}) {
    const double c0 = amp(rng);
    double a[3];
    for (double& x : a) x = amp(rng) / 2.0;
    for (int j = 0; j < n; ++j) {
      const double t = p.node(j);
      double val = c0, der = 0.0;
      for (int k = 0; k < 3; ++k) {
        const double f = (k + 1) * pi;
        val += a[k] * std::sin(f * t);
        der += a[k] * f * std::cos(f * t);
      }
      (*w)[static_cast<std::size_t>(j)] = val;
      (*dw)[static_cast<std::size_t>(j)] = der;
    }
  }
  return p;
}

void write_csv(std::ostream& os, const GridPair& p) {
  os << "t,u,du,v,dv\n";
  char buf[160];
  for (int j = 0; j < p.n; ++j) {
    const auto k = static_cast<std::size_t>(j);
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", p.node(j), p.u[k], p.du[k],
                  p.v[k], p.dv[k]);
    os << buf;
  }
}

}  // namespace hamcert
