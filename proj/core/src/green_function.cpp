#include "hamcert/green_function.hpp"

#include <algorithm>

namespace hamcert {

GreenBranch green_branch(const GreenParams& p, double t, double s) {
  if (s <= std::min(p.eta, t)) return GreenBranch::LowS;
  if (t <= s && s <= p.eta) return GreenBranch::BetweenTEta;
  if (p.eta <= s && s <= t) return GreenBranch::BetweenEtaT;
  return GreenBranch::HighS;
}

double green_branch_value(const GreenParams& p, GreenBranch b, double t, double s) {
  const double a = p.alpha, e = p.eta;
  const double q = 1.0 - a * e;
  double body = 0.0;
  switch (b) {
    case GreenBranch::LowS: body = (2.0 * t * s - s * s) * q + t * t * s * (a - 1.0); break;
    case GreenBranch::BetweenTEta: body = t * t * q + t * t * s * (a - 1.0); break;
    case GreenBranch::BetweenEtaT: body = (2.0 * t * s - s * s) * q + t * t * (a * e - s); break;
    case GreenBranch::HighS: body = t * t * (1.0 - s); break;
  }
  return body / (2.0 * q);
}

double green_branch_dt(const GreenParams& p, GreenBranch b, double t, double s) {
  const double a = p.alpha, e = p.eta;
  const double q = 1.0 - a * e;
  double body = 0.0;
  switch (b) {
    case GreenBranch::LowS: body = s * q + t * s * (a - 1.0); break;
    case GreenBranch::BetweenTEta: body = t * q + t * s * (a - 1.0); break;
    case GreenBranch::BetweenEtaT: body = s * q + t * (a * e - s); break;
    case GreenBranch::HighS: body = t * (1.0 - s); break;
  }
  return body / q;
}

double green_value(const GreenParams& p, double t, double s) {
  return green_branch_value(p, green_branch(p, t, s), t, s);
}

double green_dt(const GreenParams& p, double t, double s) {
  return green_branch_dt(p, green_branch(p, t, s), t, s);
}

}  // namespace hamcert
