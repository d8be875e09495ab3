#include "hamcert/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace hamcert {

using nlohmann::ordered_json;

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

ordered_json finite_or_string(double x) {
  if (std::isfinite(x)) return x;
  return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
}

ordered_json vec(const std::vector<double>& v) {
  ordered_json a = ordered_json::array();
  for (double x : v) a.push_back(finite_or_string(x));
  return a;
}

const char* pass(bool ok) { return ok ? "PASS" : "FAIL"; }

}  // namespace

struct Report::Impl {
  ordered_json doc;
  ordered_json timing = ordered_json::array();
  std::ostringstream text;
  std::optional<std::string> timestamp;
  double wall = 0.0;
};

Report::Report(std::string command, std::string source) : impl_(std::make_unique<Impl>()) {
  impl_->doc["schema"] = 1;
  impl_->doc["command"] = command;
  impl_->doc["problem"] = source;
  impl_->text << "hamcert " << command << " " << source << "\n";
}

Report::~Report() = default;
Report::Report(Report&&) noexcept = default;
Report& Report::operator=(Report&&) noexcept = default;

void Report::add_assumption(const AssumptionReport& r, int component) {
  ordered_json j;
  j["name"] = r.name;
  j["component"] = component;
  j["passed"] = r.passed;
  if (r.resolution > 0) {
    j["bound_source"] = "grid-sample";
    j["resolution"] = r.resolution;
  } else {
    j["bound_source"] = "quadrature";
  }
  j["checks"] = ordered_json::array();
  auto& t = impl_->text;
  t << "  [" << r.name << "] component " << component << ": "
    << (r.passed ? (r.resolution > 0 ? "supported at resolution " + std::to_string(r.resolution)
                                     : std::string("PASS"))
                 : std::string("FAIL"))
    << "\n";
  for (const auto& c : r.checks) {
    ordered_json cj;
    cj["label"] = c.label;
    cj["passed"] = c.passed;
    cj["worst_violation"] = finite_or_string(c.worst_violation);
    cj["location"] = vec(c.location);
    if (r.resolution == 0) {
      cj["value"] = finite_or_string(c.value);
      cj["error_bound"] = finite_or_string(c.error_bound);
      t << "      " << c.label << " = " << num(c.value) << " +- " << num(c.error_bound) << "  "
        << pass(c.passed) << "\n";
    } else {
      t << "      " << c.label << ": worst violation " << num(c.worst_violation) << "  "
        << pass(c.passed) << "\n";
    }
    j["checks"].push_back(std::move(cj));
  }
  impl_->doc["assumptions"].push_back(std::move(j));
}

void Report::add_derivative_check(const DerivativeCheck& d, int component) {
  ordered_json j;
  j["component"] = component;
  j["passed"] = d.passed;
  j["worst_excess"] = finite_or_string(d.worst_excess);
  j["location"] = vec({d.t, d.s});
  j["bound_source"] = "finite-difference";
  impl_->doc["kernel_derivative"].push_back(std::move(j));
  impl_->text << "  [dk/dt] component " << component << ": " << pass(d.passed)
              << " (worst excess " << num(d.worst_excess) << ")\n";
}

void Report::add_constants(const ConstantsTable& t) {
  ordered_json arr = ordered_json::array();
  auto& out = impl_->text;
  out << "  constants (reciprocal, value, quadrature error of the reciprocal)\n";
  for (int i = 1; i <= 2; ++i) {
    const ComponentConstants& k = t(i);
    const std::pair<const char*, const ConstantValue*> items[] = {
        {"m", &k.m}, {"m*", &k.m_star}, {"M", &k.M}, {"M*", &k.M_star}};
    for (const auto& [name, cv] : items) {
      const std::string label = std::string(name).insert(1, std::to_string(i));
      ordered_json j;
      j["name"] = label;
      j["component"] = i;
      j["reciprocal"] = cv->reciprocal;
      j["value"] = cv->value;
      j["extremizer"] = cv->extremizer;
      j["error_bound"] = cv->error_bound;
      j["value_error_bound"] = cv->value_error();
      arr.push_back(std::move(j));
      impl_->timing.push_back({{"constant", label}, {"wall_seconds", cv->wall_seconds}});
      out << "    1/" << label << " = " << num(cv->reciprocal) << "  " << label << " = "
          << num(cv->value) << "  (t* = " << num(cv->extremizer) << ", err "
          << num(cv->error_bound) << ")\n";
    }
  }
  impl_->doc["constants"] = std::move(arr);
}

void Report::add_certificate(const Certificate& c) {
  ordered_json j;
  j["scenario"] = to_string(c.scenario);
  j["verdict"] = to_string(c.verdict);
  j["rigorous"] = c.rigorous;
  j["promised_solutions"] = c.promised_solutions;
  auto& t = impl_->text;
  t << "  certificate " << to_string(c.scenario) << ": " << to_string(c.verdict);
  if (c.scenario != Scenario::Nonexistence)
    t << ", promised nontrivial solutions: " << c.promised_solutions;
  t << "\n";

  ordered_json ladder = ordered_json::array();
  for (const auto& r : c.ladder) ladder.push_back({r.rho1, r.rho2});
  j["ladder"] = std::move(ladder);
  ordered_json annuli = ordered_json::array();
  for (const auto& a : c.annuli) {
    annuli.push_back({{"inner", {a.inner.rho1, a.inner.rho2}},
                      {"outer", {a.outer.rho1, a.outer.rho2}}});
    t << "    annulus: inner (" << num(a.inner.rho1) << ", " << num(a.inner.rho2)
      << "), outer (" << num(a.outer.rho1) << ", " << num(a.outer.rho2) << ")\n";
  }
  j["annuli"] = std::move(annuli);

  ordered_json outcomes = ordered_json::array();
  for (const auto& o : c.outcomes) {
    ordered_json oj;
    oj["condition"] = to_string(o.id);
    oj["rho"] = {o.rho1, o.rho2};
    oj["verdict"] = to_string(o.verdict);
    t << "    (" << to_string(o.id) << ") at (" << num(o.rho1) << ", " << num(o.rho2)
      << "): " << to_string(o.verdict) << "\n";
    ordered_json entries = ordered_json::array();
    for (const auto& e : o.entries) {
      ordered_json ej;
      ej["label"] = e.label;
      ej["component"] = e.component;
      ej["lhs"] = finite_or_string(e.lhs);
      ej["rhs"] = finite_or_string(e.rhs);
      ej["margin"] = finite_or_string(e.margin);
      ej["error_band"] = e.error_band;
      ej["bound_source"] = to_string(e.bound_source);
      ej["grid_value"] = finite_or_string(e.grid_value);
      if (e.hint_value) ej["hint_value"] = *e.hint_value;
      ej["verdict"] = to_string(e.verdict);
      entries.push_back(std::move(ej));
      t << "      " << e.label << ": lhs " << num(e.lhs) << " [" << to_string(e.bound_source)
        << "], rhs " << num(e.rhs) << ", margin " << num(e.margin) << " (band "
        << num(e.error_band) << ") " << to_string(e.verdict) << "\n";
    }
    oj["entries"] = std::move(entries);
    outcomes.push_back(std::move(oj));
  }
  j["outcomes"] = std::move(outcomes);

  if (!c.alternatives.empty()) {
    ordered_json alts = ordered_json::array();
    for (const auto& a : c.alternatives) {
      alts.push_back({{"label", a.label},
                      {"component", a.component},
                      {"supported", a.supported},
                      {"samples", a.samples},
                      {"worst_margin", finite_or_string(a.worst_margin)},
                      {"worst_location", vec(a.worst_location)},
                      {"bound_source", "grid-sample"}});
      t << "    " << a.label << ": " << (a.supported ? "supported" : "not supported") << " ("
        << a.samples << " samples, worst margin " << num(a.worst_margin) << ")\n";
    }
    j["alternatives"] = std::move(alts);
  }
  j["notes"] = c.notes;
  for (const auto& n : c.notes) t << "    note: " << n << "\n";
  impl_->doc["certificate"] = std::move(j);
}

void Report::add_solution(const SolutionResult& s, const ConeReport& cone,
                          const std::optional<Localization>& loc) {
  ordered_json j;
  j["converged"] = s.converged;
  j["iterations"] = s.iterations;
  j["residual"] = finite_or_string(s.residual);
  j["final_theta"] = s.final_theta;
  j["grid_nodes"] = s.pair.n;
  j["norms"] = {{"u_C", s.norms.u},          {"du_C", s.norms.du},
                {"v_C", s.norms.v},          {"dv_C", s.norms.dv},
                {"u_C1", s.norms.u_c1()},    {"v_C1", s.norms.v_c1()},
                {"error_bound", finite_or_string(s.residual)}};
  j["derivative_mismatch"] = {{"value", s.derivative_mismatch},
                              {"allowance", s.derivative_allowance},
                              {"consistent", s.derivative_consistent}};
  j["trivial"] = s.trivial;
  ordered_json cj;
  cj["passed"] = cone.passed;
  cj["worst_slack"] = cone.worst_slack;
  cj["tolerance"] = kConeTolerance;
  cj["checks"] = ordered_json::array();
  for (const auto& c : cone.checks)
    cj["checks"].push_back({{"label", c.label},
                            {"component", c.component},
                            {"lhs", c.lhs},
                            {"rhs", c.rhs},
                            {"slack", c.slack},
                            {"passed", c.passed}});
  j["cone"] = std::move(cj);
  auto& t = impl_->text;
  t << "  picard: " << (s.converged ? "converged" : "not converged") << " after "
    << s.iterations << " iterations, residual " << num(s.residual) << "\n"
    << "    ||u||_C1 = " << num(s.norms.u_c1()) << ", ||v||_C1 = " << num(s.norms.v_c1())
    << "\n    cone membership: " << pass(cone.passed) << " (worst slack "
    << num(cone.worst_slack) << ")\n";
  if (loc) {
    j["localization"] = {{"inner", {loc->inner.rho1, loc->inner.rho2}},
                         {"outer", {loc->outer.rho1, loc->outer.rho2}},
                         {"inside_annulus", loc->inside}};
    t << "    inside annulus: " << (loc->inside ? "yes" : "no") << "\n";
  }
  j["notes"] = s.notes;
  for (const auto& n : s.notes) t << "    note: " << n << "\n";
  impl_->doc["solution"] = std::move(j);
}

void Report::add_green_check(const GreenCheck& g) {
  ordered_json j;
  j["component"] = g.component;
  j["alpha"] = g.params.alpha;
  j["eta"] = g.params.eta;
  j["max_branch_jump"] = g.max_branch_jump;
  auto& t = impl_->text;
  t << "  green(" << num(g.params.alpha) << ", " << num(g.params.eta) << ") component "
    << g.component << ": " << pass(g.passed) << "\n    max branch jump "
    << num(g.max_branch_jump) << "\n";
  ordered_json bvp = ordered_json::array();
  for (const auto& [h, r] : g.bvp) {
    bvp.push_back({{"h", h},
                   {"passed", r.passed},
                   {"max_ode_residual", r.max_ode_residual},
                   {"worst_t", r.worst_t},
                   {"ode_threshold", r.ode_threshold},
                   {"w0", r.w0},
                   {"dw0", r.dw0},
                   {"nonlocal", r.nonlocal},
                   {"bc_threshold", r.bc_threshold},
                   {"checked_nodes", r.checked_nodes}});
    t << "    h = " << h << ": ODE residual " << num(r.max_ode_residual) << ", BC residuals "
      << num(r.w0) << ", " << num(r.dw0) << ", " << num(r.nonlocal) << "  " << pass(r.passed)
      << "\n";
  }
  j["bvp"] = std::move(bvp);
  j["passed"] = g.passed;
  impl_->doc["green"].push_back(std::move(j));
  add_assumption(g.a3, g.component);
  add_assumption(g.a_star_4, g.component);
}

void Report::add_note(const std::string& note) {
  impl_->doc["notes"].push_back(note);
  impl_->text << "  note: " << note << "\n";
}

void Report::set_outcome(const std::string& status, int exit_code) {
  impl_->doc["status"] = status;
  impl_->doc["exit_code"] = exit_code;
  impl_->text << "status: " << status << "\n";
}

void Report::set_error(const std::string& message) {
  impl_->doc["error"] = message;
  impl_->text << "error: " << message << "\n";
}

void Report::set_meta(const std::string& timestamp, double wall_seconds) {
  impl_->timestamp = timestamp;
  impl_->wall = wall_seconds;
}

void Report::set_tool_version(const std::string& version) { impl_->doc["tool_version"] = version; }

std::string Report::json(int indent) const {
  ordered_json out = impl_->doc;
  if (impl_->timestamp) {
    out["meta"] = {{"timestamp", *impl_->timestamp},
                   {"wall_seconds", impl_->wall},
                   {"timing", impl_->timing}};
  }
  return out.dump(indent) + "\n";
}

std::string Report::text() const { return impl_->text.str(); }

}  // namespace hamcert
