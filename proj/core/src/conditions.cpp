#include "hamcert/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hamcert/errors.hpp"

namespace hamcert {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "HOLDS";
    case Verdict::Fails: return "FAILS";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

const char* to_string(BoundSource s) {
  switch (s) {
    case BoundSource::GridEstimate: return "grid-estimate";
    case BoundSource::UserHint: return "user-hint";
    case BoundSource::Exact: return "exact";
  }
  return "?";
}

const char* to_string(HintMode m) {
  switch (m) {
    case HintMode::Require: return "require";
    case HintMode::Allow: return "allow";
    case HintMode::Ignore: return "ignore";
  }
  return "?";
}

std::optional<HintMode> hint_mode_from_string(std::string_view s) {
  for (auto m : {HintMode::Require, HintMode::Allow, HintMode::Ignore})
    if (s == to_string(m)) return m;
  return std::nullopt;
}

const char* to_string(ConditionId id) { return id == ConditionId::I1 ? "I1" : "I0"; }

const char* to_string(Scenario s) {
  switch (s) {
    case Scenario::S1: return "S1";
    case Scenario::S2: return "S2";
    case Scenario::S3: return "S3";
    case Scenario::S4: return "S4";
    case Scenario::S5: return "S5";
    case Scenario::S6: return "S6";
    case Scenario::HatS1: return "HatS1";
    case Scenario::HatS2: return "HatS2";
    case Scenario::Nonexistence: return "NONEXISTENCE";
  }
  return "?";
}

std::optional<Scenario> scenario_from_string(std::string_view s) {
  for (auto sc : {Scenario::S1, Scenario::S2, Scenario::S3, Scenario::S4, Scenario::S5,
                  Scenario::S6, Scenario::HatS1, Scenario::HatS2, Scenario::Nonexistence})
    if (s == to_string(sc)) return sc;
  return std::nullopt;
}

std::size_t ladder_length(Scenario s) {
  switch (s) {
    case Scenario::S1:
    case Scenario::S2:
    case Scenario::HatS1:
    case Scenario::HatS2: return 2;
    case Scenario::S3:
    case Scenario::S4: return 3;
    case Scenario::S5:
    case Scenario::S6: return 4;
    case Scenario::Nonexistence: return 0;
  }
  return 0;
}

namespace {

Interval radius_interval(ConeVariant cone, double rho) {
  return cone == ConeVariant::SignChanging ? Interval{-rho, rho} : Interval{0.0, rho};
}

double rho_of(int i, double rho1, double rho2) { return i == 1 ? rho1 : rho2; }

void require_radii(double rho1, double rho2) {
  if (!(rho1 > 0.0) || !(rho2 > 0.0)) throw Error("radii must be positive");
}

std::optional<Expr> pick_hint(const Component& comp, bool sup, InfKind kind) {
  if (sup) return comp.hints.sup;
  return kind == InfKind::Plain ? comp.hints.inf : comp.hints.inf_star;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

BoundEstimate estimate(const SystemProblem& problem, int i, bool sup, InfKind kind,
                       const std::array<Interval, 5>& box, double rho1, double rho2,
                       const ConditionOptions& opts) {
  const Component& comp = problem.component(i);
  const double rho = rho_of(i, rho1, rho2);
  const ExtremumMode mode = sup ? ExtremumMode::Max : ExtremumMode::Min;

  BoundEstimate out;
  const BoxExtremum grid = box_extremum(
      [&](std::span<const double> x) { return comp.f.eval(x) / rho; }, box, mode, opts.box_grid);
  out.grid_value = grid.value;
  out.grid_location = grid.location;
  out.value = grid.value;

  if (comp.f.is_constant()) {
    out.source = BoundSource::Exact;
    return out;
  }
  if (opts.hints == HintMode::Ignore) return out;

  const std::optional<Expr> hint = pick_hint(comp, sup, kind);
  const char* which = sup ? "sup" : (kind == InfKind::Plain ? "inf" : "inf_star");
  if (!hint) {
    if (opts.hints == HintMode::Require)
      throw HintMissing("component " + std::to_string(i) + " has no '" + which + "' hint");
    return out;
  }
  const double radii[2] = {rho1, rho2};
  const double h = hint->eval(radii);
  const double tol = opts.hint_tolerance * std::max(1.0, std::fabs(grid.value));
  if (sup ? h < grid.value - tol : h > grid.value + tol)
    throw HintInconsistent("component " + std::to_string(i) + " '" + which + "' hint " +
                           fmt(h) + (sup ? " is below" : " is above") + " the grid estimate " +
                           fmt(grid.value) + " at rho = (" + fmt(rho1) + ", " + fmt(rho2) + ")");
  out.hint_value = h;
  out.value = h;
  out.source = BoundSource::UserHint;
  return out;
}

Verdict combine(const std::vector<InequalityEntry>& entries) {
  bool inconclusive = false;
  for (const auto& e : entries) {
    if (e.verdict == Verdict::Fails) return Verdict::Fails;
    if (e.verdict == Verdict::Inconclusive) inconclusive = true;
  }
  return inconclusive ? Verdict::Inconclusive : Verdict::Holds;
}

}  // namespace

std::array<Interval, 5> sup_box(const SystemProblem& problem, double rho1, double rho2) {
  const Interval u = radius_interval(problem.cone, rho1);
  const Interval v = radius_interval(problem.cone, rho2);
  return {Interval{0.0, 1.0}, u, u, v, v};
}

std::array<Interval, 5> inf_box(const SystemProblem& problem, int i, InfKind kind, double rho1,
                                double rho2) {
  const Envelope& env = problem.component(i).envelope;
  auto box = sup_box(problem, rho1, rho2);
  const double rho = rho_of(i, rho1, rho2);
  if (kind == InfKind::Plain) {
    box[0] = {env.a, env.b};
    box[i == 1 ? 1 : 3] = {env.c * rho, rho};
  } else {
    box[0] = {env.gamma, env.delta};
    box[i == 1 ? 2 : 4] = {env.d * rho, rho};
  }
  return box;
}

BoundEstimate sup_f_rho(const SystemProblem& problem, int i, double rho1, double rho2,
                        const ConditionOptions& opts) {
  require_radii(rho1, rho2);
  return estimate(problem, i, true, InfKind::Plain, sup_box(problem, rho1, rho2), rho1, rho2,
                  opts);
}

BoundEstimate inf_f_rho(const SystemProblem& problem, int i, InfKind kind, double rho1,
                        double rho2, const ConditionOptions& opts) {
  require_radii(rho1, rho2);
  return estimate(problem, i, false, kind, inf_box(problem, i, kind, rho1, rho2), rho1, rho2,
                  opts);
}

ConditionOutcome check_I1(const SystemProblem& problem, double rho1, double rho2,
                          const ConstantsTable& constants, const ConditionOptions& opts) {
  ConditionOutcome out;
  out.id = ConditionId::I1;
  out.rho1 = rho1;
  out.rho2 = rho2;
  for (int i = 1; i <= 2; ++i) {
    const BoundEstimate sup = sup_f_rho(problem, i, rho1, rho2, opts);
    const ComponentConstants& k = constants(i);
    const ConstantValue& lim = k.m.value <= k.m_star.value ? k.m : k.m_star;

    InequalityEntry e;
    e.label = "f" + std::to_string(i) + "^{rho1,rho2} < min{m" + std::to_string(i) + ", m" +
              std::to_string(i) + "*}";
    e.component = i;
    e.lhs = sup.value;
    e.rhs = lim.value;
    e.margin = e.rhs - e.lhs;
    e.error_band = lim.value_error() + opts.slack * std::max(1.0, std::fabs(e.rhs));
    e.bound_source = sup.source;
    e.grid_value = sup.grid_value;
    e.hint_value = sup.hint_value;
    // The grid sup never exceeds the true sup, so it can only refute.
    if (sup.source != BoundSource::GridEstimate && e.margin > e.error_band)
      e.verdict = Verdict::Holds;
    else if (sup.grid_value >= e.rhs + e.error_band)
      e.verdict = Verdict::Fails;
    else
      e.verdict = Verdict::Inconclusive;
    out.entries.push_back(std::move(e));
  }
  out.verdict = combine(out.entries);
  return out;
}

ConditionOutcome check_I0(const SystemProblem& problem, double rho1, double rho2,
                          const ConstantsTable& constants, const ConditionOptions& opts) {
  ConditionOutcome out;
  out.id = ConditionId::I0;
  out.rho1 = rho1;
  out.rho2 = rho2;
  for (int i = 1; i <= 2; ++i) {
    for (InfKind kind : {InfKind::Plain, InfKind::Star}) {
      const BoundEstimate inf = inf_f_rho(problem, i, kind, rho1, rho2, opts);
      const bool star = kind == InfKind::Star;
      const ConstantValue& lim = star ? constants(i).M_star : constants(i).M;
      const std::string si = std::to_string(i);

      InequalityEntry e;
      e.label = star ? "f" + si + "*_{(rho1,rho2)} > M" + si + "*"
                     : "f" + si + "_{(rho1,rho2)} > M" + si;
      e.component = i;
      e.lhs = inf.value;
      e.rhs = lim.value;
      e.margin = e.lhs - e.rhs;
      e.error_band = lim.value_error() + opts.slack * std::max(1.0, std::fabs(e.rhs));
      e.bound_source = inf.source;
      e.grid_value = inf.grid_value;
      e.hint_value = inf.hint_value;
      // The grid inf never falls below the true inf, so it can only refute.
      if (inf.source != BoundSource::GridEstimate && e.margin > e.error_band)
        e.verdict = Verdict::Holds;
      else if (inf.grid_value <= e.rhs - e.error_band)
        e.verdict = Verdict::Fails;
      else
        e.verdict = Verdict::Inconclusive;
      out.entries.push_back(std::move(e));
    }
  }
  out.verdict = combine(out.entries);
  return out;
}

namespace {

bool starts_with_I0(Scenario s) {
  return s == Scenario::S1 || s == Scenario::S3 || s == Scenario::S5 || s == Scenario::HatS1;
}

constexpr const char* kRadiusNames[] = {"rho", "r", "s", "sigma"};

void validate_ladder(const SystemProblem& problem, Scenario scenario,
                     std::span<const RadiiPair> ladder) {
  const std::string sc = to_string(scenario);
  if (ladder.size() != ladder_length(scenario))
    throw LadderViolation(sc + " needs " + std::to_string(ladder_length(scenario)) +
                          " radii pairs, got " + std::to_string(ladder.size()));
  for (const auto& r : ladder)
    if (!(r.rho1 > 0.0) || !(r.rho2 > 0.0)) throw LadderViolation(sc + ": radii must be positive");

  bool index0 = starts_with_I0(scenario);
  for (std::size_t k = 0; k + 1 < ladder.size(); ++k, index0 = !index0) {
    for (int i = 1; i <= 2; ++i) {
      const double lo = i == 1 ? ladder[k].rho1 : ladder[k].rho2;
      const double hi = i == 1 ? ladder[k + 1].rho1 : ladder[k + 1].rho2;
      const double c = problem.component(i).envelope.c;
      const double lhs = index0 ? lo / c : lo;
      if (!(lhs < hi)) {
        const std::string si = std::to_string(i);
        std::string ineq = std::string(kRadiusNames[k]) + "_" + si;
        if (index0) ineq += "/c_" + si;
        ineq += " < " + std::string(kRadiusNames[k + 1]) + "_" + si;
        throw LadderViolation(sc + ": gap inequality " + ineq + " violated (" + fmt(lhs) +
                              " >= " + fmt(hi) + ")");
      }
    }
  }
}

}  // namespace

Certificate certify(const SystemProblem& problem, Scenario scenario,
                    std::span<const RadiiPair> ladder, const ConstantsTable& constants,
                    const ConditionOptions& opts) {
  if (scenario == Scenario::Nonexistence)
    throw Error("certify: use check_nonexistence for the non-existence conditions");
  if ((scenario == Scenario::HatS1 || scenario == Scenario::HatS2) &&
      problem.cone != ConeVariant::NonNegativeNonDecreasing)
    throw Error(std::string(to_string(scenario)) +
                " applies to the NonNegativeNonDecreasing cone only");
  validate_ladder(problem, scenario, ladder);

  Certificate cert;
  cert.scenario = scenario;
  cert.ladder.assign(ladder.begin(), ladder.end());
  bool index0 = starts_with_I0(scenario);
  for (const RadiiPair& r : ladder) {
    cert.outcomes.push_back(index0 ? check_I0(problem, r.rho1, r.rho2, constants, opts)
                                   : check_I1(problem, r.rho1, r.rho2, constants, opts));
    index0 = !index0;
  }
  for (std::size_t k = 0; k + 1 < ladder.size(); ++k)
    cert.annuli.push_back({ladder[k], ladder[k + 1]});

  bool inconclusive = false, fails = false;
  for (const auto& o : cert.outcomes) {
    fails |= o.verdict == Verdict::Fails;
    inconclusive |= o.verdict == Verdict::Inconclusive;
  }
  cert.verdict = fails ? Verdict::Fails : inconclusive ? Verdict::Inconclusive : Verdict::Holds;
  cert.promised_solutions =
      cert.verdict == Verdict::Holds ? static_cast<int>(ladder.size()) - 1 : 0;
  if (cert.verdict == Verdict::Holds)
    cert.notes.push_back("each annulus between consecutive radii pairs contains a nontrivial "
                         "solution in the cone");
  if (cert.verdict == Verdict::Inconclusive)
    cert.notes.push_back("some inequality rests on a grid estimate on its unfavourable side or "
                         "lies within the numerical error band");
  return cert;
}

namespace {

// Samples a strict inequality margin(x) > 0 over a 5-D grid, skipping points
// where `active` is false. Stops at the first violation.
template <class Active, class Margin>
NonexistenceAlternative sweep(std::string label, int component,
                              const std::array<Interval, 5>& box, int n, Active active,
                              Margin margin) {
  NonexistenceAlternative alt;
  alt.label = std::move(label);
  alt.component = component;
  alt.worst_margin = std::numeric_limits<double>::infinity();
  std::array<std::vector<double>, 5> axes;
  for (std::size_t k = 0; k < 5; ++k) {
    const int cnt = box[k].lo == box[k].hi ? 1 : n;
    axes[k].resize(cnt);
    for (int j = 0; j < cnt; ++j)
      axes[k][j] = j == cnt - 1 ? box[k].hi : box[k].lo + box[k].width() * j / std::max(cnt - 1, 1);
  }
  double x[5];
  for (double t : axes[0]) {
    x[0] = t;
    for (double a : axes[1]) {
      x[1] = a;
      for (double b : axes[2]) {
        x[2] = b;
        for (double c : axes[3]) {
          x[3] = c;
          for (double d : axes[4]) {
            x[4] = d;
            if (!active(x)) continue;
            ++alt.samples;
            const double m = margin(x);
            if (m < alt.worst_margin) {
              alt.worst_margin = m;
              alt.worst_location.assign(x, x + 5);
            }
            if (!(m > 0.0)) return alt;
          }
        }
      }
    }
  }
  alt.supported = alt.samples > 0;
  return alt;
}

}  // namespace

Certificate check_nonexistence(const SystemProblem& problem, const ConstantsTable& constants,
                               const Box4& box, int n) {
  if (n < 2) throw Error("check_nonexistence: need at least 2 samples per axis");
  for (const auto& iv : box)
    if (!(iv.lo <= iv.hi) || !std::isfinite(iv.lo) || !std::isfinite(iv.hi))
      throw Error("check_nonexistence: sample box must be bounded and non-empty");

  Certificate cert;
  cert.scenario = Scenario::Nonexistence;
  cert.rigorous = false;

  for (int i = 1; i <= 2; ++i) {
    const Component& comp = problem.component(i);
    const ComponentConstants& k = constants(i);
    const int var = i == 1 ? 1 : 3;  // u1 or v1 within (t, u1, u2, v1, v2)
    const std::string si = std::to_string(i);
    const std::string arg = i == 1 ? "u1" : "v1";
    auto f = [&](const double* x) { return comp.f.eval(std::span<const double>(x, 5)); };

    const std::array<Interval, 5> full{Interval{0.0, 1.0}, box[0], box[1], box[2], box[3]};
    const double m = k.m.value, m_err = k.m.value_error();
    cert.alternatives.push_back(sweep(
        "f" + si + " < m" + si + "|" + arg + "| for " + arg + " != 0", i, full, n,
        [&](const double* x) { return x[var] != 0.0; },
        [&](const double* x) { return (m - m_err) * std::fabs(x[var]) - f(x); }));

    std::array<Interval, 5> strip = full;
    strip[0] = {comp.envelope.a, comp.envelope.b};
    const double slope = k.M.value / comp.envelope.c;
    const double slope_err = k.M.value_error() / comp.envelope.c;
    cert.alternatives.push_back(sweep(
        "f" + si + " > (M" + si + "/c" + si + ") " + arg + " for " + arg + " > 0, t in [a" + si +
            ",b" + si + "]",
        i, strip, n, [&](const double* x) { return x[var] > 0.0; },
        [&](const double* x) { return f(x) - (slope + slope_err) * x[var]; }));
  }

  const bool n1 = cert.alternatives[0].supported || cert.alternatives[1].supported;
  const bool n2 = cert.alternatives[2].supported || cert.alternatives[3].supported;
  cert.verdict = n1 && n2 ? Verdict::Holds : Verdict::Fails;
  cert.promised_solutions = 0;
  std::ostringstream note;
  note << "sampled at " << n << " points per axis on the truncation box (u1,u2,v1,v2) in ["
       << box[0].lo << "," << box[0].hi << "]x[" << box[1].lo << "," << box[1].hi << "]x["
       << box[2].lo << "," << box[2].hi << "]x[" << box[3].lo << "," << box[3].hi
       << "]; " << (n1 && n2 ? "supported at this resolution, not proved" : "not supported");
  cert.notes.push_back(note.str());
  return cert;
}

}  // namespace hamcert
