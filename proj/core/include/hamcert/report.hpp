#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hamcert/conditions.hpp"
#include "hamcert/constants.hpp"
#include "hamcert/greens3.hpp"
#include "hamcert/model.hpp"
#include "hamcert/solver.hpp"

namespace hamcert {

struct GreenCheck {
  int component = 1;
  GreenParams params;
  double max_branch_jump = 0.0;
  std::vector<std::pair<std::string, ResidualReport>> bvp;  // keyed by right-hand side h
  AssumptionReport a3;
  AssumptionReport a_star_4;
  bool passed = true;
};

struct Localization {
  RadiiPair inner, outer;
  bool inside = false;
};

/// Accumulates one command's results as a JSON document and a human-readable
/// text summary. Every number is stored together with its error bound or the
/// source of the bound.
class Report {
 public:
  Report(std::string command, std::string source);
  ~Report();
  Report(Report&&) noexcept;
  Report& operator=(Report&&) noexcept;

  void add_assumption(const AssumptionReport& r, int component);
  void add_derivative_check(const DerivativeCheck& d, int component);
  void add_constants(const ConstantsTable& t);
  void add_certificate(const Certificate& c);
  void add_solution(const SolutionResult& s, const ConeReport& cone,
                    const std::optional<Localization>& loc);
  void add_green_check(const GreenCheck& g);
  void add_note(const std::string& note);

  /// status is HOLDS/FAILS/INCONCLUSIVE/PASS/CONVERGED/... ; exit_code mirrors the CLI.
  void set_outcome(const std::string& status, int exit_code);
  void set_error(const std::string& message);
  /// Timestamps and wall-clock times; omitted from json() unless set.
  void set_meta(const std::string& timestamp, double wall_seconds);
  void set_tool_version(const std::string& version);

  std::string json(int indent = 2) const;
  std::string text() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace hamcert
