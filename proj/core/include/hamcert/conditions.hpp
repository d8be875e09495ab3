#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hamcert/constants.hpp"
#include "hamcert/model.hpp"

namespace hamcert {

enum class Verdict { Holds, Fails, Inconclusive };

/// Where a sup/inf bound came from. A grid estimate is one-sided: it can
/// refute a condition but never establish it. Exact is used when f does not
/// depend on any argument, so sampling it is exact.
enum class BoundSource { GridEstimate, UserHint, Exact };

enum class HintMode { Require, Allow, Ignore };

const char* to_string(Verdict v);
const char* to_string(BoundSource s);
const char* to_string(HintMode m);
std::optional<HintMode> hint_mode_from_string(std::string_view s);

struct ConditionOptions {
  int box_grid = 11;             // samples per axis for sup/inf grid estimates
  HintMode hints = HintMode::Allow;
  double slack = 1e-12;          // added to every error band, relative to max(1, |rhs|)
  double hint_tolerance = 1e-9;  // relative tolerance of the hint-vs-grid cross-check
};

struct BoundEstimate {
  double value = 0.0;  // bound used for decisions: hint or exact value if present, else grid
  BoundSource source = BoundSource::GridEstimate;
  double grid_value = 0.0;
  std::vector<double> grid_location;  // (t, u1, u2, v1, v2)
  std::optional<double> hint_value;
};

enum class InfKind { Plain, Star };

/// Box (t, u1, u2, v1, v2) over which f_i / rho_i is maximised. Symmetric
/// [-rho, rho] intervals for the sign-changing cone, [0, rho] otherwise.
std::array<Interval, 5> sup_box(const SystemProblem& problem, double rho1, double rho2);

/// Box for the restricted infimum: t in [a_i, b_i] (plain) or [gamma_i, delta_i]
/// (star), with one coordinate pinned to [c_i rho_i, rho_i] or [d_i rho_i, rho_i]:
/// u1 (i=1 plain), u2 (i=1 star), v1 (i=2 plain), v2 (i=2 star).
std::array<Interval, 5> inf_box(const SystemProblem& problem, int i, InfKind kind, double rho1,
                                double rho2);

/// sup of f_i / rho_i over sup_box. Throws HintInconsistent when the hint lies
/// below the grid estimate, HintMissing in Require mode without a hint.
BoundEstimate sup_f_rho(const SystemProblem& problem, int i, double rho1, double rho2,
                        const ConditionOptions& opts = {});

/// inf of f_i / rho_i over inf_box. Throws HintInconsistent when the hint lies
/// above the grid estimate.
BoundEstimate inf_f_rho(const SystemProblem& problem, int i, InfKind kind, double rho1,
                        double rho2, const ConditionOptions& opts = {});

struct InequalityEntry {
  std::string label;
  int component = 1;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;      // rhs - lhs for (I1), lhs - rhs for (I0)
  double error_band = 0.0;  // margin must exceed this to hold
  BoundSource bound_source = BoundSource::GridEstimate;
  double grid_value = 0.0;
  std::optional<double> hint_value;
  Verdict verdict = Verdict::Inconclusive;
};

enum class ConditionId { I1, I0 };
const char* to_string(ConditionId id);

struct ConditionOutcome {
  ConditionId id = ConditionId::I1;
  double rho1 = 0.0, rho2 = 0.0;
  std::vector<InequalityEntry> entries;
  Verdict verdict = Verdict::Inconclusive;
};

/// f_i^{rho1,rho2} < min{m_i, m_i*} for i = 1, 2.
ConditionOutcome check_I1(const SystemProblem& problem, double rho1, double rho2,
                          const ConstantsTable& constants, const ConditionOptions& opts = {});

/// f_{1,(rho)} > M_1, f*_{1,(rho)} > M*_1, f_{2,(rho)} > M_2, f*_{2,(rho)} > M*_2.
ConditionOutcome check_I0(const SystemProblem& problem, double rho1, double rho2,
                          const ConstantsTable& constants, const ConditionOptions& opts = {});

enum class Scenario { S1, S2, S3, S4, S5, S6, HatS1, HatS2, Nonexistence };
const char* to_string(Scenario s);
std::optional<Scenario> scenario_from_string(std::string_view s);

/// Number of radii pairs a scenario ladder must have.
std::size_t ladder_length(Scenario s);

struct RadiiPair {
  double rho1 = 0.0, rho2 = 0.0;
};

struct Annulus {
  RadiiPair inner, outer;
};

struct NonexistenceAlternative {
  std::string label;
  int component = 1;
  bool supported = false;
  long long samples = 0;
  double worst_margin = 0.0;          // min over samples of the strict inequality's slack
  std::vector<double> worst_location;  // (t, u1, u2, v1, v2)
};

struct Certificate {
  Scenario scenario = Scenario::S1;
  std::vector<RadiiPair> ladder;
  int promised_solutions = 0;
  std::vector<Annulus> annuli;
  std::vector<ConditionOutcome> outcomes;
  std::vector<NonexistenceAlternative> alternatives;
  Verdict verdict = Verdict::Inconclusive;
  bool rigorous = true;
  std::vector<std::string> notes;
};

/// Validates the scenario's radii gaps (LadderViolation), then runs its
/// alternating sequence of (I1)/(I0) checks. The certificate promises
/// ladder.size() - 1 solutions, one per annulus, when every check holds.
Certificate certify(const SystemProblem& problem, Scenario scenario,
                    std::span<const RadiiPair> ladder, const ConstantsTable& constants,
                    const ConditionOptions& opts = {});

/// Samples the strict non-existence inequalities on [0,1] x box (t restricted
/// to [a_i, b_i] for the second alternatives). Supported means one alternative
/// per component held at every sample; the result is never rigorous.
Certificate check_nonexistence(const SystemProblem& problem, const ConstantsTable& constants,
                               const Box4& box, int n);

}  // namespace hamcert
