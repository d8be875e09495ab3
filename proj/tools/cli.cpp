#include "cli.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "hamcert/conditions.hpp"
#include "hamcert/constants.hpp"
#include "hamcert/errors.hpp"
#include "hamcert/greens3.hpp"
#include "hamcert/problem_file.hpp"
#include "hamcert/report.hpp"
#include "hamcert/solver.hpp"

namespace hamcert::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

struct Flags {
  std::string file;
  std::string out;
  std::string csv;
  std::optional<double> tol;
  std::optional<int> grid;
  bool no_meta = false;
  std::string hints;
};

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::Holds: return kExitOk;
    case Verdict::Fails: return kExitFails;
    case Verdict::Inconclusive: return kExitInconclusive;
  }
  return kExitError;
}

ConstantsOptions constants_options(const Flags& f) {
  ConstantsOptions o;
  if (f.tol) o.quad.tol = *f.tol;
  return o;
}

ConditionOptions condition_options(const ProblemFile& pf, const Flags& f) {
  ConditionOptions o;
  o.box_grid = f.grid.value_or(pf.check.box_grid);
  o.hints = pf.check.hints;
  if (!f.hints.empty()) o.hints = *hint_mode_from_string(f.hints);
  return o;
}

int cmd_assumptions(const ProblemFile& pf, const Flags& f, Report& rep) {
  const int n = f.grid.value_or(pf.check.assumptions_grid);
  QuadOptions q;
  if (f.tol) q.tol = *f.tol;
  bool ok = true;
  for (int i = 1; i <= 2; ++i) {
    const Component& comp = pf.problem.component(i);
    if (!comp.kernel.is_green()) {
      const DerivativeCheck d = check_derivative(comp.kernel);
      rep.add_derivative_check(d, i);
      ok = ok && d.passed;
    }
    for (const AssumptionReport& r : {verify_A3(comp, n, n), verify_A4(comp, q), verify_weight(comp, n)}) {
      rep.add_assumption(r, i);
      ok = ok && r.passed;
    }
    if (pf.check.f_box) {
      const AssumptionReport r = verify_nonneg_f(comp, *pf.check.f_box, std::min(n, 33));
      rep.add_assumption(r, i);
      ok = ok && r.passed;
    }
  }
  rep.add_note("sampled checks are supported at their resolution, not proved");
  rep.set_outcome(ok ? "PASS" : "FAILS", ok ? kExitOk : kExitFails);
  return ok ? kExitOk : kExitFails;
}

int cmd_constants(const ProblemFile& pf, const Flags& f, Report& rep) {
  rep.add_constants(compute_constants(pf.problem, constants_options(f)));
  rep.set_outcome("PASS", kExitOk);
  return kExitOk;
}

int cmd_nonexistence(const ProblemFile& pf, const Flags& f, Report& rep) {
  if (!pf.check.nonexistence_box)
    throw Error("nonexistence needs check.nonexistence_box in the problem file");
  const ConstantsTable t = compute_constants(pf.problem, constants_options(f));
  rep.add_constants(t);
  const Certificate c = check_nonexistence(pf.problem, t, *pf.check.nonexistence_box,
                                           f.grid.value_or(pf.check.nonexistence_n));
  rep.add_certificate(c);
  const bool supported = c.verdict == Verdict::Holds;
  rep.set_outcome(supported ? "SUPPORTED" : "NOT SUPPORTED", supported ? kExitOk : kExitFails);
  return supported ? kExitOk : kExitFails;
}

int cmd_certify(const ProblemFile& pf, const Flags& f, Report& rep) {
  if (!pf.check.scenario) throw Error("certify needs check.scenario in the problem file");
  if (*pf.check.scenario == Scenario::Nonexistence) return cmd_nonexistence(pf, f, rep);
  const ConstantsTable t = compute_constants(pf.problem, constants_options(f));
  rep.add_constants(t);
  const Certificate c =
      certify(pf.problem, *pf.check.scenario, pf.check.ladder, t, condition_options(pf, f));
  rep.add_certificate(c);
  const int code = verdict_exit(c.verdict);
  rep.set_outcome(to_string(c.verdict), code);
  return code;
}

int cmd_solve(const ProblemFile& pf, const Flags& f, Report& rep) {
  const SolverSection& s = pf.solver;
  const int n = f.grid.value_or(s.n);
  GridPair init;
  switch (s.init) {
    case InitKind::Zero: init = GridPair::zeros(n); break;
    case InitKind::Envelope: init = envelope_init(pf.problem, n, s.lambda1, s.lambda2); break;
    case InitKind::Random: init = random_init(n, s.seed, s.scale); break;
  }
  PicardOptions o;
  o.theta = s.theta;
  o.tol = f.tol.value_or(s.tol);
  o.max_iter = s.max_iter;
  const HammersteinOperator op(pf.problem, n);
  SolutionResult r;
  try {
    r = picard(op, init, o);
  } catch (const Divergence& e) {
    rep.set_error(e.what());
    rep.set_outcome("DIVERGED", kExitFails);
    return kExitFails;
  }
  std::optional<Localization> loc;
  if (pf.check.ladder.size() >= 2) {
    const RadiiPair a = pf.check.ladder[0], b = pf.check.ladder[1];
    loc = Localization{a, b, localization_check(r, a.rho1, a.rho2, b.rho1, b.rho2)};
  }
  rep.add_solution(r, cone_membership(r.pair, pf.problem), loc);
  if (!f.csv.empty()) {
    std::ofstream csv(f.csv);
    if (!csv) throw Error("cannot write '" + f.csv + "'");
    write_csv(csv, r.pair);
  }
  const int code = r.converged ? kExitOk : kExitInconclusive;
  rep.set_outcome(r.converged ? "CONVERGED" : "NOT CONVERGED", code);
  return code;
}

int cmd_green_check(const ProblemFile& pf, const Flags& f, Report& rep) {
  const int n = f.grid.value_or(2001);
  bool any = false, ok = true;
  for (int i = 1; i <= 2; ++i) {
    const Component& comp = pf.problem.component(i);
    const GreenParams* p = comp.kernel.green_params();
    if (!p) continue;
    any = true;
    GreenCheck g;
    g.component = i;
    g.params = *p;
    for (int j = 0; j <= 200; ++j) g.max_branch_jump = std::max(g.max_branch_jump, branch_jumps(*p, j / 200.0).max());
    for (const char* h : {"1", "s"})
      g.bvp.emplace_back(h, verify_bvp(*p, Expr::parse(h, vars::profile), n));
    g.a3 = verify_A3(comp, 200, 200);
    g.a_star_4 = check_A_star_4(*p, comp.weight);
    g.passed = g.max_branch_jump < 1e-10 && g.a3.passed && g.a_star_4.passed;
    for (const auto& b : g.bvp) g.passed = g.passed && b.second.passed;
    if (comp.envelope.c != default_c(*p)) {
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "component %d uses c = %.10g; the closed-form lower-bound fraction is %.10g", i,
                    comp.envelope.c, default_c(*p));
      rep.add_note(buf);
    }
    rep.add_green_check(g);
    ok = ok && g.passed;
  }
  if (!any) throw Error("green-check: no component uses a green(alpha, eta) kernel");
  rep.set_outcome(ok ? "PASS" : "FAILS", ok ? kExitOk : kExitFails);
  return ok ? kExitOk : kExitFails;
}

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certification toolkit for two-component Hammerstein integral systems", "hamcert"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1, 1);

  Flags flags;
  struct Command {
    const char* name;
    const char* help;
    int (*fn)(const ProblemFile&, const Flags&, Report&);
  };
  const Command commands[] = {
      {"assumptions", "Sampled and quadrature checks of the kernel, envelope and weight",
       cmd_assumptions},
      {"constants", "Compute m, m*, M, M* for both components", cmd_constants},
      {"certify", "Run the scenario named in the [check] section", cmd_certify},
      {"nonexistence", "Sample the non-existence inequalities", cmd_nonexistence},
      {"solve", "Picard iteration on a collocation grid", cmd_solve},
      {"green-check", "Property checks of green(alpha, eta) kernels", cmd_green_check},
  };
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const Command& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("file", flags.file, "Problem file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", flags.out, "Write the JSON report to this path");
    sub->add_option("--tol", flags.tol, "Quadrature tolerance, or the Picard tolerance for solve")
        ->check(CLI::PositiveNumber);
    sub->add_option("--grid", flags.grid,
                    "Sampling resolution: box grid, assumption grid, non-existence samples, "
                    "solver nodes or BVP grid depending on the command")
        ->check(CLI::Range(2, 100000));
    sub->add_flag("--no-meta", flags.no_meta, "Omit timestamps and timings from the JSON report");
    sub->add_option("--hints", flags.hints, "Use of bound hints")
        ->check(CLI::IsMember({"require", "allow", "ignore"}));
    if (std::string(c.name) == "solve")
      sub->add_option("--csv", flags.csv, "Export the solution table (t,u,du,v,dv)");
    subs.emplace_back(sub, &c);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  const Command* cmd = nullptr;
  for (const auto& [sub, c] : subs)
    if (sub->parsed()) cmd = c;

  const auto start = std::chrono::steady_clock::now();
  Report rep(cmd->name, flags.file);
  rep.set_tool_version(kVersion);
  int code = kExitError;
  try {
    const ProblemFile pf = load_problem(flags.file);
    for (const auto& n : pf.notes) rep.add_note(n);
    code = cmd->fn(pf, flags, rep);
  } catch (const Error& e) {
    err << "hamcert: " << e.what() << "\n";
    rep.set_error(e.what());
    rep.set_outcome("ERROR", kExitError);
    code = kExitError;
  }
  if (!flags.no_meta) {
    const std::chrono::duration<double> wall = std::chrono::steady_clock::now() - start;
    rep.set_meta(utc_now(), wall.count());
  }
  out << rep.text();
  if (!flags.out.empty()) {
    std::ofstream js(flags.out, std::ios::binary);
    if (!js) {
      err << "hamcert: cannot write '" << flags.out << "'\n";
      return kExitError;
    }
    js << rep.json();
  }
  return code;
}

}  // namespace hamcert::cli
