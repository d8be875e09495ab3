#pragma once

// Problem files are YAML documents:
//
//   schema: 1
//   cone: { variant: SignChanging }        # or NonNegative, NonNegativeNonDecreasing
//   component.1:
//     kernel: "s*(7/8*t - t^2)"            # expression in t, s, or green(alpha, eta)
//     kernel_dt: "s*(7/8 - 2*t)"           # required for expression kernels
//     phi: "49/256*s"                      # envelope; defaults exist for green kernels
//     psi: "9/8*s"
//     a: 7/32                              # numbers may be constant expressions
//     b: 21/32
//     c: 3/4
//     gamma: 0
//     delta: 7/32
//     d: 7/18
//     weight: "1"                          # g(s), defaults to 1
//     f: "(u1^2 + u2^2)*(2 + cos(v1*v2))"  # in t, u1, u2, v1, v2
//     hint: { sup: "6*rho1", inf: "9/16*rho1", inf_star: "49/324*rho1" }
//   component.2: ...
//   check:
//     scenario: S2
//     ladder: [[0.03, 0.3], [700, 600]]
//     box_grid: 11
//     hints: allow
//     assumptions_grid: 200
//     f_box: [[-1, 1], [-1, 1], [-1, 1], [-1, 1]]
//     nonexistence_box: [[-10, 10], [-10, 10], [-10, 10], [-10, 10]]
//     nonexistence_n: 41
//   solver: { n: 401, theta: 1, tol: 1e-10, max_iter: 200, init: zero }
//
// Unknown keys are rejected with their line and column.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hamcert/conditions.hpp"
#include "hamcert/model.hpp"

namespace hamcert {

inline constexpr int kProblemSchema = 1;

struct CheckSection {
  std::optional<Scenario> scenario;
  std::vector<RadiiPair> ladder;
  int box_grid = 11;
  HintMode hints = HintMode::Allow;
  int assumptions_grid = 200;
  std::optional<Box4> f_box;
  std::optional<Box4> nonexistence_box;
  int nonexistence_n = 41;
};

enum class InitKind { Zero, Envelope, Random };
const char* to_string(InitKind k);

struct SolverSection {
  int n = 401;
  double theta = 1.0;
  double tol = 1e-10;
  int max_iter = 200;
  InitKind init = InitKind::Zero;
  double lambda1 = 1.0, lambda2 = 1.0;  // envelope init amplitudes
  std::uint64_t seed = 1;               // random init
  double scale = 1.0;
};

struct ProblemFile {
  std::string source;  // file name or "<input>"
  int schema = kProblemSchema;
  SystemProblem problem;
  CheckSection check;
  SolverSection solver;
  std::vector<std::string> notes;  // e.g. which envelope fields were defaulted
};

ProblemFile parse_problem(std::string_view text, std::string source = "<input>");
ProblemFile load_problem(const std::filesystem::path& path);

}  // namespace hamcert
