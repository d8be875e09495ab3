#pragma once

// Arithmetic expression language used by problem files.
//
// Grammar (EBNF), lowest to highest precedence:
//
//   expr    = term { ("+" | "-") term } ;
//   term    = unary { ("*" | "/") unary } ;
//   unary   = "-" unary | "+" unary | power ;
//   power   = primary [ "^" unary ] ;              (* right-associative *)
//   primary = number | name | name "(" args ")" | "(" expr ")" ;
//   args    = expr { "," expr } ;
//   number  = digits [ "." digits ] [ ("e"|"E") ["+"|"-"] digits ] ;
//
// An integer literal divided by an integer literal ("7/8") is folded into a
// single rational literal unless the denominator is itself raised to a power.
// Functions: sin cos exp abs sqrt (one argument), min max (two arguments).

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hamcert {

using VarSet = std::vector<std::string>;

namespace vars {
inline const VarSet kernel{"t", "s"};
inline const VarSet nonlinearity{"t", "u1", "u2", "v1", "v2"};
inline const VarSet profile{"s"};
inline const VarSet radii{"rho1", "rho2"};
inline const VarSet none{};
}  // namespace vars

enum class NodeKind { Number, Rational, Variable, Neg, Add, Sub, Mul, Div, Pow, Call };
enum class Func { Sin, Cos, Exp, Abs, Sqrt, Min, Max };

struct Node {
  NodeKind kind = NodeKind::Number;
  double value = 0.0;     // Number, Rational
  std::string text;       // literal spelling, variable name or function name
  std::size_t var_index = 0;
  Func func = Func::Sin;
  std::vector<std::shared_ptr<const Node>> children;
};

bool structurally_equal(const Node& a, const Node& b);

/// Fully parenthesised rendering; reparses to a structurally equal tree.
std::string pretty(const Node& n);

/// Immutable parsed expression. Copies share the tree and compiled program,
/// and evaluation is reentrant.
class Expr {
 public:
  Expr();  // the constant 0

  static Expr parse(std::string_view text, const VarSet& vars);

  /// Values are given in the order of vars().
  double eval(std::span<const double> values) const;
  double eval(const std::map<std::string, double>& env) const;

  const Node& root() const;
  const VarSet& vars() const;
  const std::string& source() const;
  std::string str() const { return pretty(root()); }

  bool is_constant() const;
  bool uses(std::string_view var) const;

 private:
  struct Impl;
  explicit Expr(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

/// Parses and evaluates a variable-free expression ("7/32", "1/24+sqrt(2)/3").
double eval_constant(std::string_view text);

}  // namespace hamcert
