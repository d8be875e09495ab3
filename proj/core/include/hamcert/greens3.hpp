#pragma once

#include "hamcert/model.hpp"

namespace hamcert {

KernelSpec build_kernel(const GreenParams& p);

/// Canonical envelope: phi = (1+alpha)/(1-alpha eta) s(1-s), psi = (1-s)/(1-alpha eta),
/// a = gamma = eta/alpha, b = delta = eta,
/// c = eta^2 / (2 alpha^2 (1+alpha)) * min(alpha-1, 1), d = min(alpha eta, eta).
Envelope default_envelope(const GreenParams& p);

/// The lower-bound fraction c of default_envelope, without building the envelope.
double default_c(const GreenParams& p);

struct BranchJumps {
  double value_at_t = 0.0;     // |k| jump across s = t
  double value_at_eta = 0.0;   // |k| jump across s = eta
  double dt_at_t = 0.0;
  double dt_at_eta = 0.0;
  double max() const;
};

/// Differences between the two branch formulas that meet at s = t and s = eta.
BranchJumps branch_jumps(const GreenParams& p, double t);

struct ResidualReport {
  bool passed = true;
  double max_ode_residual = 0.0;  // max |-w''' - h| over checked interior nodes
  double worst_t = 0.0;
  double w0 = 0.0;                // |w(0)|
  double dw0 = 0.0;               // |w'(0)|
  double nonlocal = 0.0;          // |w'(1) - alpha w'(eta)|
  int checked_nodes = 0;
  double ode_threshold = 1e-4;
  double bc_threshold = 1e-8;
};

/// Checks that w(t) = int_0^1 k(t,s) h(s) ds solves the boundary value problem:
/// the third derivative by a 4th-order central stencil on an n_grid uniform
/// grid (nodes within three steps of eta or of the ends are skipped), the
/// boundary conditions with w' taken from the dk/dt integral.
ResidualReport verify_bvp(const GreenParams& p, const Expr& h, int n_grid = 2001);

/// Positivity of the two integrals over [eta/alpha, eta] of the default
/// envelope profiles against g.
AssumptionReport check_A_star_4(const GreenParams& p, const Expr& g, QuadOptions opts = {});

}  // namespace hamcert
