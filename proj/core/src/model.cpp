#include "hamcert/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hamcert/errors.hpp"

namespace hamcert {

KernelSpec KernelSpec::from_expressions(Expr value, Expr dt) {
  KernelSpec k;
  k.impl_ = ExprPair{std::move(value), std::move(dt)};
  return k;
}

KernelSpec KernelSpec::green(GreenParams p) {
  if (!p.valid())
    throw ParamError("green kernel needs 0 < eta < 1 and 1 < alpha < 1/eta");
  KernelSpec k;
  k.impl_ = p;
  return k;
}

double KernelSpec::value(double t, double s) const {
  if (const auto* g = std::get_if<GreenParams>(&impl_)) return green_value(*g, t, s);
  const double ts[2] = {t, s};
  return std::get<ExprPair>(impl_).value.eval(ts);
}

double KernelSpec::dt(double t, double s) const {
  if (const auto* g = std::get_if<GreenParams>(&impl_)) return green_dt(*g, t, s);
  const double ts[2] = {t, s};
  return std::get<ExprPair>(impl_).dt.eval(ts);
}

std::vector<double> KernelSpec::breakpoints(double t) const {
  std::vector<double> out;
  if (const auto* g = std::get_if<GreenParams>(&impl_)) {
    for (double b : {t, g->eta})
      if (b > 0.0 && b < 1.0) out.push_back(b);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  return out;
}

std::string KernelSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (const auto* g = std::get_if<GreenParams>(&impl_)) {
    os << "green(" << g->alpha << ", " << g->eta << ")";
  } else {
    const auto& e = std::get<ExprPair>(impl_);
    os << e.value.source() << " ; d/dt: " << e.dt.source();
  }
  return os.str();
}

DerivativeCheck check_derivative(const KernelSpec& k, int n) {
  DerivativeCheck out;
  out.worst_excess = -std::numeric_limits<double>::infinity();
  const double h = 1e-6;
  const double grid_step = 1.0 / (n - 1);
  for (int i = 1; i < n - 1; ++i) {
    const double t = static_cast<double>(i) / (n - 1);
    const auto bps = k.breakpoints(t);
    for (int j = 0; j < n; ++j) {
      const double s = static_cast<double>(j) / (n - 1);
      if (std::fabs(s - t) < 2.0 * grid_step) continue;
      const bool near_bp = std::any_of(bps.begin(), bps.end(), [&](double b) {
        return std::fabs(b - s) < 1e-12;
      });
      if (near_bp) continue;
      const double fd = (k.value(t + h, s) - k.value(t - h, s)) / (2.0 * h);
      const double an = k.dt(t, s);
      const double excess = std::fabs(fd - an) - std::max(1e-6, 1e-4 * std::fabs(an));
      if (excess > out.worst_excess) {
        out.worst_excess = excess;
        out.t = t;
        out.s = s;
      }
    }
  }
  out.passed = out.worst_excess <= 0.0;
  return out;
}

Envelope Envelope::make(Expr phi, Expr psi, double a, double b, double gamma, double delta,
                        double c, double d) {
  if (!(0.0 <= a && a < b && b <= 1.0)) throw EnvelopeError("envelope needs 0 <= a < b <= 1");
  if (!(0.0 <= gamma && gamma < delta && delta <= 1.0))
    throw EnvelopeError("envelope needs 0 <= gamma < delta <= 1");
  if (!(c > 0.0 && c <= 1.0)) throw EnvelopeError("envelope needs c in (0, 1]");
  if (!(d > 0.0 && d <= 1.0)) throw EnvelopeError("envelope needs d in (0, 1]");
  Envelope e;
  e.phi = std::move(phi);
  e.psi = std::move(psi);
  e.a = a;
  e.b = b;
  e.gamma = gamma;
  e.delta = delta;
  e.c = c;
  e.d = d;
  return e;
}

const char* to_string(ConeVariant v) {
  switch (v) {
    case ConeVariant::SignChanging: return "SignChanging";
    case ConeVariant::NonNegative: return "NonNegative";
    case ConeVariant::NonNegativeNonDecreasing: return "NonNegativeNonDecreasing";
  }
  return "?";
}

std::optional<ConeVariant> cone_variant_from_string(std::string_view s) {
  for (auto v : {ConeVariant::SignChanging, ConeVariant::NonNegative,
                 ConeVariant::NonNegativeNonDecreasing})
    if (s == to_string(v)) return v;
  return std::nullopt;
}

namespace {

double eval1(const Expr& e, double x) {
  const double v[1] = {x};
  return e.eval(v);
}

double grid_point(double lo, double hi, int i, int n) {
  return i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1);
}

void finish(AssumptionReport& r) {
  r.passed = std::all_of(r.checks.begin(), r.checks.end(),
                         [](const AssumptionCheck& c) { return c.passed; });
}

}  // namespace

AssumptionReport verify_A3(const Component& comp, int n_t, int n_s) {
  if (n_t < 2 || n_s < 2) throw Error("verify_A3: need at least 2 samples per axis");
  const Envelope& env = comp.envelope;
  const KernelSpec& k = comp.kernel;
  std::vector<double> s(n_s), phi(n_s), psi(n_s);
  for (int j = 0; j < n_s; ++j) {
    s[j] = grid_point(0.0, 1.0, j, n_s);
    phi[j] = eval1(env.phi, s[j]);
    psi[j] = eval1(env.psi, s[j]);
  }

  AssumptionReport rep;
  rep.name = "A3";
  rep.resolution = std::max(n_t, n_s);

  auto scan = [&](const char* label, double lo, double hi, auto violation) {
    AssumptionCheck chk;
    chk.label = label;
    chk.worst_violation = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_t; ++i) {
      const double t = grid_point(lo, hi, i, n_t);
      for (int j = 0; j < n_s; ++j) {
        const double v = violation(t, j);
        if (v > chk.worst_violation) {
          chk.worst_violation = v;
          chk.location = {t, s[j]};
        }
      }
    }
    chk.passed = chk.worst_violation <= kAssumptionSlack;
    rep.checks.push_back(std::move(chk));
  };

  scan("|k| <= phi", 0.0, 1.0,
       [&](double t, int j) { return std::fabs(k.value(t, s[j])) - phi[j]; });
  scan("|dk/dt| <= psi", 0.0, 1.0,
       [&](double t, int j) { return std::fabs(k.dt(t, s[j])) - psi[j]; });
  scan("k >= c*phi on [a,b]", env.a, env.b,
       [&](double t, int j) { return env.c * phi[j] - k.value(t, s[j]); });
  scan("dk/dt >= d*psi on [gamma,delta]", env.gamma, env.delta,
       [&](double t, int j) { return env.d * psi[j] - k.dt(t, s[j]); });
  finish(rep);
  return rep;
}

AssumptionReport verify_A4(const Component& comp, QuadOptions opts) {
  const Envelope& env = comp.envelope;
  AssumptionReport rep;
  rep.name = "A4";
  auto integral = [&](const char* label, const Expr& prof, double lo, double hi) {
    const QuadResult q = integrate(
        [&](double s) { return eval1(prof, s) * eval1(comp.weight, s); }, lo, hi, {}, opts);
    AssumptionCheck chk;
    chk.label = label;
    chk.value = q.value;
    chk.error_bound = q.error_bound;
    chk.location = {lo, hi};
    chk.worst_violation = q.error_bound - q.value;
    chk.passed = q.value > q.error_bound;
    rep.checks.push_back(std::move(chk));
  };
  integral("int_a^b phi*g > 0", env.phi, env.a, env.b);
  integral("int_gamma^delta psi*g > 0", env.psi, env.gamma, env.delta);
  finish(rep);
  return rep;
}

AssumptionReport verify_nonneg_f(const Component& comp, const Box4& box, int n) {
  if (n < 2) throw Error("verify_nonneg_f: need at least 2 samples per axis");
  const std::array<Interval, 5> full{Interval{0.0, 1.0}, box[0], box[1], box[2], box[3]};
  const BoxExtremum lo = box_extremum([&](std::span<const double> x) { return comp.f.eval(x); },
                                      full, ExtremumMode::Min, n);
  AssumptionReport rep;
  rep.name = "A1 nonnegativity of f";
  rep.resolution = n;
  AssumptionCheck chk;
  chk.label = "f >= 0 on [0,1] x box";
  chk.value = lo.value;
  chk.worst_violation = -lo.value;
  chk.location = lo.location;
  chk.passed = lo.value >= 0.0;
  rep.checks.push_back(std::move(chk));
  finish(rep);
  return rep;
}

AssumptionReport verify_weight(const Component& comp, int n) {
  AssumptionReport rep;
  rep.name = "A4 nonnegativity of g";
  rep.resolution = n;
  AssumptionCheck chk;
  chk.label = "g >= 0 on [0,1]";
  chk.worst_violation = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) {
    const double s = grid_point(0.0, 1.0, j, n);
    const double v = -eval1(comp.weight, s);
    if (v > chk.worst_violation) {
      chk.worst_violation = v;
      chk.location = {s};
    }
  }
  chk.passed = chk.worst_violation <= 0.0;
  rep.checks.push_back(std::move(chk));
  finish(rep);
  return rep;
}

}  // namespace hamcert
