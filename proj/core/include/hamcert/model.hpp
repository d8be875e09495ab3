#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hamcert/expr.hpp"
#include "hamcert/green_function.hpp"
#include "hamcert/quadopt.hpp"

namespace hamcert {

/// A kernel k(t, s) together with its t-derivative, given either as a pair of
/// expressions in (t, s) or as the built-in three-point Green's function.
class KernelSpec {
 public:
  KernelSpec() = default;

  static KernelSpec from_expressions(Expr value, Expr dt);
  static KernelSpec green(GreenParams p);

  double value(double t, double s) const;
  double dt(double t, double s) const;

  /// s-values in (0, 1) where k(t, .) or dk/dt(t, .) may lose smoothness.
  std::vector<double> breakpoints(double t) const;

  bool is_green() const { return std::holds_alternative<GreenParams>(impl_); }
  const GreenParams* green_params() const { return std::get_if<GreenParams>(&impl_); }
  std::string describe() const;

 private:
  struct ExprPair {
    Expr value;
    Expr dt;
  };
  std::variant<ExprPair, GreenParams> impl_{ExprPair{}};
};

struct DerivativeCheck {
  bool passed = true;
  double worst_excess = 0.0;  // max of |fd - dk/dt| - allowance
  double t = 0.0, s = 0.0;
};

/// Central differences of k in t against dk/dt on an n x n grid, skipping
/// points within two steps of an s=t branch switch or a declared breakpoint.
/// Allowance is max(1e-6, 1e-4 |dk/dt|).
DerivativeCheck check_derivative(const KernelSpec& k, int n = 41);

/// Bounding data for a kernel: |k| <= phi, |dk/dt| <= psi on [0,1]^2,
/// k >= c phi on [a,b] x [0,1], dk/dt >= d psi on [gamma,delta] x [0,1].
struct Envelope {
  Expr phi;
  Expr psi;
  double a = 0.0, b = 1.0;
  double gamma = 0.0, delta = 1.0;
  double c = 1.0, d = 1.0;

  /// Validates 0 <= a < b <= 1, 0 <= gamma < delta <= 1, c, d in (0, 1].
  static Envelope make(Expr phi, Expr psi, double a, double b, double gamma, double delta,
                       double c, double d);
};

/// Closed-form bounds supplied by the user, as expressions in (rho1, rho2).
/// sup bounds f^{rho1,rho2}; inf and inf_star bound the two restricted infima.
struct BoundHints {
  std::optional<Expr> sup;
  std::optional<Expr> inf;
  std::optional<Expr> inf_star;
};

struct Component {
  KernelSpec kernel;
  Envelope envelope;
  Expr weight;  // g(s)
  Expr f;       // f(t, u1, u2, v1, v2)
  BoundHints hints;
};

enum class ConeVariant { SignChanging, NonNegative, NonNegativeNonDecreasing };

const char* to_string(ConeVariant v);
std::optional<ConeVariant> cone_variant_from_string(std::string_view s);

struct SystemProblem {
  std::array<Component, 2> components;
  ConeVariant cone = ConeVariant::SignChanging;

  const Component& component(int i) const { return components.at(static_cast<std::size_t>(i - 1)); }
};

using Box4 = std::array<Interval, 4>;

struct AssumptionCheck {
  std::string label;
  double worst_violation = 0.0;  // > 0 means violated
  std::vector<double> location;
  double value = 0.0;            // for integral checks
  double error_bound = 0.0;
  bool passed = true;
};

struct AssumptionReport {
  std::string name;
  bool passed = true;
  int resolution = 0;  // samples per axis, 0 for quadrature checks
  std::vector<AssumptionCheck> checks;
};

inline constexpr double kAssumptionSlack = 1e-9;

AssumptionReport verify_A3(const Component& comp, int n_t = 200, int n_s = 200);
AssumptionReport verify_A4(const Component& comp, QuadOptions opts = {});
AssumptionReport verify_nonneg_f(const Component& comp, const Box4& box, int n = 33);
AssumptionReport verify_weight(const Component& comp, int n = 200);

}  // namespace hamcert
