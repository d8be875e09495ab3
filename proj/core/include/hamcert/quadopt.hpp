#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace hamcert {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

struct QuadResult {
  double value = 0.0;
  double error_bound = 0.0;
  int subdivisions = 1;
};

struct QuadOptions {
  double tol = 1e-12;       // absolute
  int max_panels = 10000;
};

using ScalarFn = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (7/15) quadrature with global error control.
/// Panels are split at every breakpoint before refinement starts; the
/// breakpoints need not be sorted and points outside (lo, hi) are ignored.
/// Throws QuadratureFailure when the panel cap is reached first.
QuadResult integrate(const ScalarFn& fn, double lo, double hi,
                     std::span<const double> breakpoints = {}, QuadOptions opts = {});

enum class ExtremumMode { Max, Min };

struct ExtremumResult {
  double location = 0.0;
  double value = 0.0;
  ExtremumMode mode = ExtremumMode::Max;
  int samples = 0;
};

struct ExtremizeOptions {
  int n_seed = 129;
  double tol = 1e-10;  // final bracket width
};

/// Global 1-D extremum: uniform seeding (endpoints included), then
/// golden-section refinement inside the best seed's bracketing triple.
/// Ties between seeds go to the smallest location.
ExtremumResult extremize(const ScalarFn& fn, double lo, double hi, ExtremumMode mode,
                         ExtremizeOptions opts = {});

using VectorFn = std::function<double(std::span<const double>)>;

struct BoxExtremum {
  double value = 0.0;
  std::vector<double> location;
  long long samples = 0;
};

/// Tensor-grid estimate of sup/inf over a box, corners included. This is an
/// estimate only: the grid sup is a lower bound of the true sup and the grid
/// inf an upper bound of the true inf. Degenerate intervals are sampled once.
BoxExtremum box_extremum(const VectorFn& fn, std::span<const Interval> box, ExtremumMode mode,
                         int n_per_axis);

/// Sign changes of fn on [lo, hi], located by a uniform scan followed by
/// bisection. Exact zeros at scan nodes are reported as well.
std::vector<double> sign_roots(const ScalarFn& fn, double lo, double hi, int n_scan = 256);

}  // namespace hamcert
