#pragma once

#include <string>

#include "hamcert/greens3.hpp"
#include "hamcert/model.hpp"

namespace fixtures {

inline hamcert::Expr kexpr(const char* s) { return hamcert::Expr::parse(s, hamcert::vars::kernel); }
inline hamcert::Expr prof(const char* s) { return hamcert::Expr::parse(s, hamcert::vars::profile); }
inline hamcert::Expr nl(const char* s) { return hamcert::Expr::parse(s, hamcert::vars::nonlinearity); }
inline hamcert::Expr rad(const char* s) { return hamcert::Expr::parse(s, hamcert::vars::radii); }

inline std::string problems_dir() { return HAMCERT_PROBLEMS_DIR; }

// Sign-changing example with polynomial kernels.
inline hamcert::Component sec3_component(int i) {
  using namespace hamcert;
  Component c;
  if (i == 1) {
    c.kernel = KernelSpec::from_expressions(kexpr("s*(7/8*t - t^2)"), kexpr("s*(7/8 - 2*t)"));
    c.envelope = Envelope::make(prof("49/256*s"), prof("9/8*s"), 7.0 / 32, 21.0 / 32, 0.0,
                                7.0 / 32, 3.0 / 4, 7.0 / 18);
    c.f = nl("(u1^2 + u2^2)*(2 + cos(v1*v2))");
    c.hints.sup = rad("6*rho1");
    c.hints.inf = rad("9/16*rho1");
    c.hints.inf_star = rad("49/324*rho1");
  } else {
    c.kernel = KernelSpec::from_expressions(kexpr("s*(11/10*t - t^2 - 1/10)"),
                                            kexpr("s*(11/10 - 2*t)"));
    c.envelope = Envelope::make(prof("81/400*s"), prof("11/10*s"), 13.0 / 40, 31.0 / 40, 0.0,
                                11.0 / 40, 3.0 / 4, 13.0 / 44);
    c.f = nl("(v1^2 + v2^2)*(2 - sin(u1*u2))");
    c.hints.sup = rad("6*rho2");
    c.hints.inf = rad("9/16*rho2");
    c.hints.inf_star = rad("169/1936*rho2");
  }
  c.weight = prof("1");
  return c;
}

inline hamcert::SystemProblem sec3_problem() {
  hamcert::SystemProblem p;
  p.components = {sec3_component(1), sec3_component(2)};
  p.cone = hamcert::ConeVariant::SignChanging;
  return p;
}

// Third-order three-point example. printed_envelope selects the envelope
// printed with the example (c1 = 1/45); otherwise the closed-form defaults.
inline hamcert::Component ex_component(int i, bool printed_envelope = true) {
  using namespace hamcert;
  Component c;
  const GreenParams p = i == 1 ? GreenParams{1.5, 0.5} : GreenParams{2.0, 1.0 / 3};
  c.kernel = build_kernel(p);
  if (!printed_envelope) {
    c.envelope = default_envelope(p);
  } else if (i == 1) {
    c.envelope = Envelope::make(prof("10*s*(1 - s)"), prof("4*(1 - s)"), 1.0 / 3, 0.5, 1.0 / 3,
                                0.5, 1.0 / 45, 0.5);
  } else {
    c.envelope = Envelope::make(prof("9*s*(1 - s)"), prof("3*(1 - s)"), 1.0 / 6, 1.0 / 3,
                                1.0 / 6, 1.0 / 3, 1.0 / 216, 1.0 / 3);
  }
  c.weight = prof("1");
  if (i == 1) {
    c.f = nl("t*(u1^2 + u2^2)*(2 + cos(v1*v2))");
    c.hints.sup = rad("6*rho1");
    c.hints.inf = rad("rho1/6075");
    c.hints.inf_star = rad("rho1/12");
  } else {
    c.f = nl("t*(v1^2 + v2^2)*(2 - sin(u1*u2))");
    c.hints.sup = rad("6*rho2");
    c.hints.inf = rad("rho2/54");
    c.hints.inf_star = rad("rho2/54");
  }
  return c;
}

inline hamcert::SystemProblem ex_problem(bool printed_envelope = true) {
  hamcert::SystemProblem p;
  p.components = {ex_component(1, printed_envelope), ex_component(2, printed_envelope)};
  p.cone = hamcert::ConeVariant::NonNegativeNonDecreasing;
  return p;
}

inline hamcert::SystemProblem with_f(hamcert::SystemProblem p, const char* f1, const char* f2) {
  p.components[0].f = nl(f1);
  p.components[1].f = nl(f2);
  p.components[0].hints = {};
  p.components[1].hints = {};
  return p;
}

}  // namespace fixtures
