#pragma once

#include <array>

#include "hamcert/model.hpp"
#include "hamcert/quadopt.hpp"

namespace hamcert {

/// One certification constant. The extremum of the integral is the
/// reciprocal (1/m, 1/m*, 1/M, 1/M*); value is its inverse.
struct ConstantValue {
  double reciprocal = 0.0;
  double value = 0.0;
  double extremizer = 0.0;   // t at which the extremum is attained
  double error_bound = 0.0;  // quadrature error of the reciprocal at the extremizer
  double wall_seconds = 0.0;

  /// First-order error of value propagated from the reciprocal's error.
  double value_error() const { return error_bound * value * value; }
};

struct ComponentConstants {
  ConstantValue m, m_star, M, M_star;
};

struct ConstantsTable {
  std::array<ComponentConstants, 2> components;
  const ComponentConstants& operator()(int i) const {
    return components.at(static_cast<std::size_t>(i - 1));
  }
};

struct ConstantsOptions {
  QuadOptions quad{};
  ExtremizeOptions extremize{};
  int root_scan = 256;
};

/// 1/m = max over t in [0,1] of int_0^1 |k(t,s)| g(s) ds.
ConstantValue compute_m(const Component& comp, const ConstantsOptions& opts = {});
/// 1/m* = max over t in [0,1] of int_0^1 |dk/dt(t,s)| g(s) ds.
ConstantValue compute_m_star(const Component& comp, const ConstantsOptions& opts = {});
/// 1/M = min over t in [a,b] of int_a^b k(t,s) g(s) ds.
ConstantValue compute_M(const Component& comp, const ConstantsOptions& opts = {});
/// 1/M* = min over t in [gamma,delta] of int_gamma^delta dk/dt(t,s) g(s) ds.
ConstantValue compute_M_star(const Component& comp, const ConstantsOptions& opts = {});

ComponentConstants compute_constants(const Component& comp, const ConstantsOptions& opts = {});
ConstantsTable compute_constants(const SystemProblem& problem, const ConstantsOptions& opts = {});

/// The integrals behind the constants, exposed for brute-force comparison.
QuadResult abs_kernel_integral(const Component& comp, double t, bool derivative,
                               const ConstantsOptions& opts = {});
QuadResult strip_kernel_integral(const Component& comp, double t, bool derivative,
                                 const ConstantsOptions& opts = {});

}  // namespace hamcert
