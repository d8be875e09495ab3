#include "hamcert/constants.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "hamcert/errors.hpp"

namespace hamcert {

namespace {

double eval1(const Expr& e, double x) {
  const double v[1] = {x};
  return e.eval(v);
}

using KernelFn = double (KernelSpec::*)(double, double) const;

KernelFn pick(bool derivative) { return derivative ? &KernelSpec::dt : &KernelSpec::value; }

ConstantValue finish(const char* name, ExtremumResult ext, const QuadResult& at_ext,
                     std::chrono::steady_clock::time_point start) {
  ConstantValue c;
  c.reciprocal = ext.value;
  c.extremizer = ext.location;
  c.error_bound = at_ext.error_bound;
  if (!(c.reciprocal > 10.0 * c.error_bound) || !(c.reciprocal > 0.0))
    throw DegenerateConstant(std::string("1/") + name + " = " + std::to_string(c.reciprocal) +
                             " does not exceed ten times its quadrature error bound " +
                             std::to_string(c.error_bound));
  c.value = 1.0 / c.reciprocal;
  c.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return c;
}

}  // namespace

QuadResult abs_kernel_integral(const Component& comp, double t, bool derivative,
                               const ConstantsOptions& opts) {
  const KernelSpec& k = comp.kernel;
  const KernelFn fn = pick(derivative);
  std::vector<double> bps = k.breakpoints(t);
  const auto roots = sign_roots([&](double s) { return (k.*fn)(t, s); }, 0.0, 1.0, opts.root_scan);
  bps.insert(bps.end(), roots.begin(), roots.end());
  return integrate([&](double s) { return std::fabs((k.*fn)(t, s)) * eval1(comp.weight, s); }, 0.0,
                   1.0, bps, opts.quad);
}

QuadResult strip_kernel_integral(const Component& comp, double t, bool derivative,
                                 const ConstantsOptions& opts) {
  const KernelSpec& k = comp.kernel;
  const KernelFn fn = pick(derivative);
  const double lo = derivative ? comp.envelope.gamma : comp.envelope.a;
  const double hi = derivative ? comp.envelope.delta : comp.envelope.b;
  const std::vector<double> bps = k.breakpoints(t);
  return integrate([&](double s) { return (k.*fn)(t, s) * eval1(comp.weight, s); }, lo, hi, bps,
                   opts.quad);
}

namespace {

ConstantValue max_abs(const Component& comp, bool derivative, const ConstantsOptions& opts,
                      const char* name) {
  const auto start = std::chrono::steady_clock::now();
  const ExtremumResult ext = extremize(
      [&](double t) { return abs_kernel_integral(comp, t, derivative, opts).value; }, 0.0, 1.0,
      ExtremumMode::Max, opts.extremize);
  return finish(name, ext, abs_kernel_integral(comp, ext.location, derivative, opts), start);
}

ConstantValue min_strip(const Component& comp, bool derivative, const ConstantsOptions& opts,
                        const char* name) {
  const auto start = std::chrono::steady_clock::now();
  const double lo = derivative ? comp.envelope.gamma : comp.envelope.a;
  const double hi = derivative ? comp.envelope.delta : comp.envelope.b;
  const ExtremumResult ext = extremize(
      [&](double t) { return strip_kernel_integral(comp, t, derivative, opts).value; }, lo, hi,
      ExtremumMode::Min, opts.extremize);
  return finish(name, ext, strip_kernel_integral(comp, ext.location, derivative, opts), start);
}

}  // namespace

ConstantValue compute_m(const Component& comp, const ConstantsOptions& opts) {
  return max_abs(comp, false, opts, "m");
}

ConstantValue compute_m_star(const Component& comp, const ConstantsOptions& opts) {
  return max_abs(comp, true, opts, "m*");
}

ConstantValue compute_M(const Component& comp, const ConstantsOptions& opts) {
  return min_strip(comp, false, opts, "M");
}

ConstantValue compute_M_star(const Component& comp, const ConstantsOptions& opts) {
  return min_strip(comp, true, opts, "M*");
}

ComponentConstants compute_constants(const Component& comp, const ConstantsOptions& opts) {
  return {compute_m(comp, opts), compute_m_star(comp, opts), compute_M(comp, opts),
          compute_M_star(comp, opts)};
}

ConstantsTable compute_constants(const SystemProblem& problem, const ConstantsOptions& opts) {
  return {{compute_constants(problem.component(1), opts),
           compute_constants(problem.component(2), opts)}};
}

}  // namespace hamcert
