#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hamcert/model.hpp"

namespace hamcert {

/// Values of (u, u', v, v') at n uniform nodes t_j = j / (n - 1).
struct GridPair {
  int n = 0;
  std::vector<double> u, du, v, dv;

  static GridPair zeros(int n);
  double step() const { return 1.0 / (n - 1); }
  double node(int j) const { return static_cast<double>(j) / (n - 1); }
  /// Throws ParamError unless n >= 101, array sizes match and values are finite.
  void validate() const;
};

inline constexpr int kMinGridNodes = 101;

struct Norms {
  double u = 0.0, du = 0.0, v = 0.0, dv = 0.0;
  double u_c1() const { return u > du ? u : du; }
  double v_c1() const { return v > dv ? v : dv; }
};

Norms norms(const GridPair& p);

/// Sup-norm of a - b over all four arrays.
double distance(const GridPair& a, const GridPair& b);

/// The operator T on a fixed grid. Kernel values at the quadrature nodes are
/// tabulated once; each application then costs one f evaluation per
/// quadrature node and component.
///
/// Quadrature: 5-point Gauss-Legendre on every grid cell, with cells split at
/// kernel breakpoints that are not grid nodes (eta for Green kernels).
/// Nonlinearity arguments are interpolated linearly between nodes.
class HammersteinOperator {
 public:
  HammersteinOperator(SystemProblem problem, int n);

  int n() const { return n_; }
  const SystemProblem& problem() const { return problem_; }
  GridPair apply(const GridPair& p) const;
  std::size_t quadrature_size() const { return s_.size(); }

 private:
  void forcing(int i, const GridPair& p, std::vector<double>& out) const;

  SystemProblem problem_;
  int n_;
  std::vector<double> s_;            // quadrature nodes
  std::vector<int> cell_;            // grid cell holding s_q
  std::vector<double> frac_;         // position of s_q within its cell
  std::array<std::vector<double>, 2> wg_;  // w_q g_i(s_q)
  std::array<std::vector<double>, 2> k_;   // n x Q, k_i(t_j, s_q)
  std::array<std::vector<double>, 2> kt_;  // n x Q, dk_i/dt(t_j, s_q)
};

GridPair apply_T(const SystemProblem& problem, const GridPair& p);

struct PicardOptions {
  double theta = 1.0;
  double tol = 1e-10;
  int max_iter = 200;
  double blowup = 1e12;
  int max_halvings = 6;
};

struct SolutionResult {
  GridPair pair;
  double residual = 0.0;  // sup-norm of pair - T(pair)
  int iterations = 0;     // applications of T
  bool converged = false;
  double final_theta = 1.0;
  Norms norms;
  double derivative_mismatch = 0.0;  // central differences of u, v against du, dv
  double derivative_allowance = 0.0;
  bool derivative_consistent = true;
  bool trivial = false;
  std::vector<std::string> notes;
};

/// Damped iteration x <- (1 - theta) x + theta T(x). Stops once the residual
/// (and hence the step) is at most tol. theta is halved, at most
/// max_halvings times, whenever the residual grows. Throws Divergence when
/// an iterate leaves [-blowup, blowup].
SolutionResult picard(const HammersteinOperator& op, const GridPair& init,
                      const PicardOptions& opts = {});
SolutionResult picard(const SystemProblem& problem, const GridPair& init, double theta,
                      double tol, int max_iter);

struct ConeCheck {
  std::string label;
  int component = 1;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // lhs - rhs
  bool passed = true;
};

struct ConeReport {
  bool passed = true;
  double worst_slack = 0.0;
  std::vector<ConeCheck> checks;
};

inline constexpr double kConeTolerance = 1e-9;

/// Per component: min over nodes in [a,b] of w against c ||w||_C, min over
/// nodes in [gamma,delta] of w' against d ||w'||_C, plus w >= 0 for the
/// non-negative variants and w' >= 0 for the non-decreasing one.
ConeReport cone_membership(const GridPair& p, const SystemProblem& problem);

/// ||u||_C1 <= r1, ||v||_C1 <= r2 and not (||u||_C1 < rho1 and ||v||_C1 < rho2).
bool localization_check(const SolutionResult& r, double rho1, double rho2, double r1, double r2);
bool localization_check(const Norms& n, double rho1, double rho2, double r1, double r2);

/// lambda_i times phi_i normalised to unit sup-norm, with its derivative from
/// central differences of phi.
GridPair envelope_init(const SystemProblem& problem, int n, double lambda1, double lambda2);

/// Smooth random pair: a few sine modes with amplitudes up to `scale`, exact
/// derivatives. Deterministic in seed.
GridPair random_init(int n, std::uint64_t seed, double scale);

/// Delimited table with header t,u,du,v,dv.
void write_csv(std::ostream& os, const GridPair& p);

}  // namespace hamcert
