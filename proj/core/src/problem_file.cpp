#include "hamcert/problem_file.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "hamcert/errors.hpp"
#include "hamcert/greens3.hpp"

namespace hamcert {

const char* to_string(InitKind k) {
  switch (k) {
    case InitKind::Zero: return "zero";
    case InitKind::Envelope: return "envelope";
    case InitKind::Random: return "random";
  }
  return "?";
}

namespace {

[[noreturn]] void fail(const YAML::Node& node, const std::string& msg, std::size_t extra = 0) {
  const YAML::Mark m = node.Mark();
  if (m.is_null()) throw ProblemFileError(0, 0, msg);
  throw ProblemFileError(static_cast<std::size_t>(m.line) + 1,
                         static_cast<std::size_t>(m.column) + 1 + extra, msg);
}

bool present(const YAML::Node& node) { return node.IsDefined() && !node.IsNull(); }

std::string scalar(const YAML::Node& node, const std::string& what) {
  if (!node.IsScalar()) fail(node, what + " must be a scalar");
  return node.Scalar();
}

// Column offset of the scalar's first character inside the source line.
std::size_t quote_shift(const YAML::Node& node) { return node.Tag() == "!" ? 1 : 0; }

double number(const YAML::Node& node, const std::string& what) {
  const std::string text = scalar(node, what);
  try {
    return eval_constant(text);
  } catch (const SyntaxError& e) {
    fail(node, what + ": " + e.what(), quote_shift(node) + e.offset());
  } catch (const Error& e) {
    fail(node, what + ": " + e.what());
  }
}

int integer(const YAML::Node& node, const std::string& what) {
  const double x = number(node, what);
  if (x != static_cast<double>(static_cast<int>(x))) fail(node, what + " must be an integer");
  return static_cast<int>(x);
}

Expr expression(const YAML::Node& node, const VarSet& vars, const std::string& what) {
  const std::string text = scalar(node, what);
  try {
    return Expr::parse(text, vars);
  } catch (const SyntaxError& e) {
    fail(node, what + ": " + e.what(), quote_shift(node) + e.offset());
  } catch (const Error& e) {
    fail(node, what + ": " + e.what());
  }
}

Interval interval(const YAML::Node& node, const std::string& what) {
  if (!node.IsSequence() || node.size() != 2) fail(node, what + " must be a pair [lo, hi]");
  const Interval iv{number(node[0], what), number(node[1], what)};
  if (!(iv.lo <= iv.hi)) fail(node, what + " must satisfy lo <= hi");
  return iv;
}

Box4 box4(const YAML::Node& node, const std::string& what) {
  if (!node.IsSequence() || node.size() != 4)
    fail(node, what + " must list four intervals for u1, u2, v1, v2");
  Box4 b;
  for (std::size_t k = 0; k < 4; ++k) b[k] = interval(node[k], what);
  return b;
}

// Iterates a mapping, rejecting duplicate and unknown keys.
template <class Fn>
void for_each_key(const YAML::Node& map, const std::string& section,
                  std::initializer_list<std::string_view> allowed, Fn fn) {
  if (!map.IsMap()) fail(map, "section '" + section + "' must be a mapping");
  std::set<std::string> seen;
  for (auto it = map.begin(); it != map.end(); ++it) {
    const std::string key = scalar(it->first, "key");
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      fail(it->first, "unknown key '" + key + "' in section '" + section + "'");
    if (!seen.insert(key).second) fail(it->first, "duplicate key '" + key + "'");
    fn(key, it->second);
  }
}

std::optional<GreenParams> green_call(const YAML::Node& node) {
  const std::string text = scalar(node, "kernel");
  const auto open = text.find('(');
  std::string head = text.substr(0, open);
  head.erase(0, head.find_first_not_of(" \t"));
  head.erase(head.find_last_not_of(" \t") + 1);
  if (head != "green" || open == std::string::npos) return std::nullopt;
  const auto close = text.rfind(')');
  if (close == std::string::npos || close < open ||
      text.find_first_not_of(" \t", close + 1) != std::string::npos)
    fail(node, "kernel: malformed green(alpha, eta)");
  const std::string inner = text.substr(open + 1, close - open - 1);
  int depth = 0;
  std::size_t comma = std::string::npos;
  for (std::size_t k = 0; k < inner.size(); ++k) {
    if (inner[k] == '(') ++depth;
    if (inner[k] == ')') --depth;
    if (inner[k] == ',' && depth == 0) {
      if (comma != std::string::npos) fail(node, "kernel: green takes two arguments");
      comma = k;
    }
  }
  if (comma == std::string::npos) fail(node, "kernel: green takes two arguments");
  try {
    return GreenParams{eval_constant(inner.substr(0, comma)), eval_constant(inner.substr(comma + 1))};
  } catch (const Error& e) {
    fail(node, std::string("kernel: ") + e.what());
  }
}

Component parse_component(const YAML::Node& map, int i, std::vector<std::string>& notes) {
  const std::string section = "component." + std::to_string(i);
  YAML::Node kernel, kernel_dt, phi, psi, weight, f, hint;
  std::map<std::string, YAML::Node> scalars;
  for_each_key(map, section,
               {"kernel", "kernel_dt", "phi", "psi", "a", "b", "gamma", "delta", "c", "d",
                "weight", "f", "hint"},
               [&](const std::string& key, const YAML::Node& val) {
                 if (key == "kernel") kernel = val;
                 else if (key == "kernel_dt") kernel_dt = val;
                 else if (key == "phi") phi = val;
                 else if (key == "psi") psi = val;
                 else if (key == "weight") weight = val;
                 else if (key == "f") f = val;
                 else if (key == "hint") hint = val;
                 else scalars[key] = val;
               });
  if (!present(kernel)) fail(map, section + ": missing 'kernel'");
  if (!present(f)) fail(map, section + ": missing 'f'");

  Component comp;
  Envelope defaults;
  const std::optional<GreenParams> gp = green_call(kernel);
  if (gp) {
    if (present(kernel_dt)) fail(kernel_dt, "kernel_dt is not allowed with a green kernel");
    try {
      comp.kernel = build_kernel(*gp);
      defaults = default_envelope(*gp);
    } catch (const Error& e) {
      fail(kernel, e.what());
    }
  } else {
    if (!present(kernel_dt)) fail(kernel, section + ": expression kernels need 'kernel_dt'");
    comp.kernel = KernelSpec::from_expressions(expression(kernel, vars::kernel, "kernel"),
                                               expression(kernel_dt, vars::kernel, "kernel_dt"));
  }

  std::vector<std::string> defaulted;
  auto profile = [&](const YAML::Node& node, const Expr& fallback, const char* name) {
    if (present(node)) return expression(node, vars::profile, name);
    if (!gp) fail(map, section + ": missing '" + name + "'");
    defaulted.push_back(name);
    return fallback;
  };
  auto value = [&](const char* name, double fallback) {
    const auto it = scalars.find(name);
    if (it != scalars.end()) return number(it->second, name);
    if (!gp) fail(map, section + ": missing '" + std::string(name) + "'");
    defaulted.push_back(name);
    return fallback;
  };
  const Expr ph = profile(phi, defaults.phi, "phi");
  const Expr ps = profile(psi, defaults.psi, "psi");
  const double a = value("a", defaults.a), b = value("b", defaults.b);
  const double gamma = value("gamma", defaults.gamma), delta = value("delta", defaults.delta);
  const double c = value("c", defaults.c), d = value("d", defaults.d);
  try {
    comp.envelope = Envelope::make(ph, ps, a, b, gamma, delta, c, d);
  } catch (const Error& e) {
    fail(map, section + ": " + e.what());
  }
  if (!defaulted.empty()) {
    std::string note = section + ": default green envelope used for";
    for (const auto& n : defaulted) note += " " + n;
    notes.push_back(note);
  }

  comp.weight = present(weight) ? expression(weight, vars::profile, "weight") : Expr::parse("1", vars::profile);
  comp.f = expression(f, vars::nonlinearity, "f");
  if (present(hint)) {
    for_each_key(hint, section + ".hint", {"sup", "inf", "inf_star"},
                 [&](const std::string& key, const YAML::Node& val) {
                   Expr e = expression(val, vars::radii, "hint." + key);
                   if (key == "sup") comp.hints.sup = e;
                   else if (key == "inf") comp.hints.inf = e;
                   else comp.hints.inf_star = e;
                 });
  }
  return comp;
}

CheckSection parse_check(const YAML::Node& map) {
  CheckSection c;
  YAML::Node ladder;
  for_each_key(map, "check",
               {"scenario", "ladder", "box_grid", "hints", "assumptions_grid", "f_box",
                "nonexistence_box", "nonexistence_n"},
               [&](const std::string& key, const YAML::Node& val) {
                 if (key == "scenario") {
                   c.scenario = scenario_from_string(scalar(val, key));
                   if (!c.scenario) fail(val, "unknown scenario '" + val.Scalar() + "'");
                 } else if (key == "ladder") {
                   ladder = val;
                 } else if (key == "box_grid") {
                   c.box_grid = integer(val, key);
                   if (c.box_grid < 2) fail(val, "box_grid must be at least 2");
                 } else if (key == "hints") {
                   const auto m = hint_mode_from_string(scalar(val, key));
                   if (!m) fail(val, "hints must be require, allow or ignore");
                   c.hints = *m;
                 } else if (key == "assumptions_grid") {
                   c.assumptions_grid = integer(val, key);
                   if (c.assumptions_grid < 2) fail(val, "assumptions_grid must be at least 2");
                 } else if (key == "f_box") {
                   c.f_box = box4(val, key);
                 } else if (key == "nonexistence_box") {
                   c.nonexistence_box = box4(val, key);
                 } else {
                   c.nonexistence_n = integer(val, key);
                   if (c.nonexistence_n < 2) fail(val, "nonexistence_n must be at least 2");
                 }
               });
  if (present(ladder)) {
    if (!ladder.IsSequence()) fail(ladder, "ladder must be a list of [rho1, rho2] pairs");
    for (const auto& pair : ladder) {
      if (!pair.IsSequence() || pair.size() != 2) fail(pair, "ladder entries are [rho1, rho2]");
      const RadiiPair r{number(pair[0], "ladder"), number(pair[1], "ladder")};
      if (!(r.rho1 > 0.0) || !(r.rho2 > 0.0)) fail(pair, "radii must be positive");
      c.ladder.push_back(r);
    }
    if (c.scenario && *c.scenario != Scenario::Nonexistence &&
        c.ladder.size() != ladder_length(*c.scenario))
      fail(ladder, std::string("scenario ") + to_string(*c.scenario) + " needs " +
                       std::to_string(ladder_length(*c.scenario)) + " radii pairs");
  } else if (c.scenario && *c.scenario != Scenario::Nonexistence) {
    fail(map, "check: scenario given without a ladder");
  }
  return c;
}

SolverSection parse_solver(const YAML::Node& map) {
  SolverSection s;
  for_each_key(map, "solver",
               {"n", "theta", "tol", "max_iter", "init", "lambda", "seed", "scale"},
               [&](const std::string& key, const YAML::Node& val) {
                 if (key == "n") {
                   s.n = integer(val, key);
                   if (s.n < 101) fail(val, "solver n must be at least 101");
                 } else if (key == "theta") {
                   s.theta = number(val, key);
                   if (!(s.theta > 0.0 && s.theta <= 1.0)) fail(val, "theta must lie in (0, 1]");
                 } else if (key == "tol") {
                   s.tol = number(val, key);
                   if (!(s.tol > 0.0)) fail(val, "tol must be positive");
                 } else if (key == "max_iter") {
                   s.max_iter = integer(val, key);
                   if (s.max_iter < 1) fail(val, "max_iter must be at least 1");
                 } else if (key == "init") {
                   const std::string v = scalar(val, key);
                   if (v == "zero") s.init = InitKind::Zero;
                   else if (v == "envelope") s.init = InitKind::Envelope;
                   else if (v == "random") s.init = InitKind::Random;
                   else fail(val, "init must be zero, envelope or random");
                 } else if (key == "lambda") {
                   const Interval l = interval(val, key);
                   s.lambda1 = l.lo;
                   s.lambda2 = l.hi;
                 } else if (key == "seed") {
                   s.seed = static_cast<std::uint64_t>(integer(val, key));
                 } else {
                   s.scale = number(val, key);
                 }
               });
  return s;
}

}  // namespace

ProblemFile parse_problem(std::string_view text, std::string source) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ProblemFileError(static_cast<std::size_t>(e.mark.line) + 1,
                           static_cast<std::size_t>(e.mark.column) + 1, e.msg);
  }
  if (!root.IsMap()) throw ProblemFileError(1, 1, "problem file must be a mapping of sections");

  ProblemFile pf;
  pf.source = std::move(source);
  YAML::Node schema, comp[2];
  bool have_cone = false;
  for_each_key(root, "<top level>",
               {"schema", "cone", "component.1", "component.2", "check", "solver"},
               [&](const std::string& key, const YAML::Node& val) {
                 if (key == "schema") {
                   schema = val;
                 } else if (key == "cone") {
                   have_cone = true;
                   for_each_key(val, "cone", {"variant"},
                                [&](const std::string&, const YAML::Node& v) {
                                  const auto cv = cone_variant_from_string(scalar(v, "variant"));
                                  if (!cv) fail(v, "unknown cone variant '" + v.Scalar() + "'");
                                  pf.problem.cone = *cv;
                                });
                 } else if (key == "component.1") {
                   comp[0] = val;
                 } else if (key == "component.2") {
                   comp[1] = val;
                 } else if (key == "check") {
                   pf.check = parse_check(val);
                 } else {
                   pf.solver = parse_solver(val);
                 }
               });
  if (!present(schema)) throw ProblemFileError(1, 1, "missing 'schema' header");
  pf.schema = integer(schema, "schema");
  if (pf.schema != kProblemSchema)
    fail(schema, "unsupported schema " + std::to_string(pf.schema) + ", expected " +
                     std::to_string(kProblemSchema));
  for (int i = 0; i < 2; ++i) {
    if (!present(comp[i])) fail(root, "missing section 'component." + std::to_string(i + 1) + "'");
    pf.problem.components[static_cast<std::size_t>(i)] = parse_component(comp[i], i + 1, pf.notes);
  }
  if (!have_cone) pf.notes.push_back("no cone section; using SignChanging");
  return pf;
}

ProblemFile load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open problem file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str(), path.string());
}

}  // namespace hamcert
