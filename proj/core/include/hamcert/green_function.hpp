#pragma once

namespace hamcert {

/// Parameters of the third-order three-point problem
///   -w''' = h,  w(0) = w'(0) = 0,  w'(1) = alpha * w'(eta),
/// valid for 0 < eta < 1 and 1 < alpha < 1/eta.
struct GreenParams {
  double alpha = 0.0;
  double eta = 0.0;

  bool valid() const { return eta > 0.0 && eta < 1.0 && alpha > 1.0 && alpha * eta < 1.0; }
};

/// Branch of the piecewise Green's function selected by the ordering of s
/// against t and eta.
enum class GreenBranch { LowS, BetweenTEta, BetweenEtaT, HighS };

GreenBranch green_branch(const GreenParams& p, double t, double s);

double green_value(const GreenParams& p, double t, double s);
double green_dt(const GreenParams& p, double t, double s);

/// Evaluates one branch formula regardless of which ordering (t, s) falls in;
/// used for the continuity checks across branch boundaries.
double green_branch_value(const GreenParams& p, GreenBranch b, double t, double s);
double green_branch_dt(const GreenParams& p, GreenBranch b, double t, double s);

}  // namespace hamcert
