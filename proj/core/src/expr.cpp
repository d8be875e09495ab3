#include "hamcert/expr.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>

#include "hamcert/errors.hpp"

namespace hamcert {

namespace {

using NodePtr = std::shared_ptr<const Node>;

enum class Tok { Number, Name, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
  Tok kind = Tok::End;
  std::string_view text;
  std::size_t offset = 0;
  bool integer = false;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    Token tok;
    tok.offset = pos_;
    if (pos_ >= src_.size()) return tok;
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_'))
        ++end;
      tok.kind = Tok::Name;
      tok.text = src_.substr(pos_, end - pos_);
      pos_ = end;
      return tok;
    }
    switch (c) {
      case '+': tok.kind = Tok::Plus; break;
      case '-': tok.kind = Tok::Minus; break;
      case '*': tok.kind = Tok::Star; break;
      case '/': tok.kind = Tok::Slash; break;
      case '^': tok.kind = Tok::Caret; break;
      case '(': tok.kind = Tok::LParen; break;
      case ')': tok.kind = Tok::RParen; break;
      case ',': tok.kind = Tok::Comma; break;
      default:
        throw SyntaxError(pos_, std::string("unexpected character '") + c + "'");
    }
    tok.text = src_.substr(pos_, 1);
    ++pos_;
    return tok;
  }

 private:
  Token number() {
    Token tok;
    tok.kind = Tok::Number;
    tok.offset = pos_;
    std::size_t end = pos_;
    auto digits = [&] {
      std::size_t start = end;
      while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) ++end;
      return end - start;
    };
    std::size_t n = digits();
    bool integer = true;
    if (end < src_.size() && src_[end] == '.') {
      integer = false;
      ++end;
      n += digits();
    }
    if (n == 0) throw SyntaxError(pos_, "malformed number");
    if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
      integer = false;
      ++end;
      if (end < src_.size() && (src_[end] == '+' || src_[end] == '-')) ++end;
      if (digits() == 0) throw SyntaxError(end, "malformed exponent");
    }
    tok.text = src_.substr(pos_, end - pos_);
    tok.integer = integer;
    pos_ = end;
    return tok;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

double parse_double(std::string_view text, std::size_t offset) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw SyntaxError(offset, "malformed number '" + std::string(text) + "'");
  return v;
}

struct FuncInfo {
  std::string_view name;
  Func func;
  std::size_t arity;
};

constexpr std::array<FuncInfo, 7> kFunctions{{
    {"sin", Func::Sin, 1},
    {"cos", Func::Cos, 1},
    {"exp", Func::Exp, 1},
    {"abs", Func::Abs, 1},
    {"sqrt", Func::Sqrt, 1},
    {"min", Func::Min, 2},
    {"max", Func::Max, 2},
}};

NodePtr make(NodeKind kind, std::vector<NodePtr> children = {}) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->children = std::move(children);
  return n;
}

class Parser {
 public:
  Parser(std::string_view src, const VarSet& vars) : lex_(src), vars_(vars) { advance(); }

  NodePtr parse() {
    NodePtr e = expr();
    if (cur_.kind != Tok::End) throw SyntaxError(cur_.offset, "unexpected trailing input");
    return e;
  }

 private:
  void advance() { cur_ = lex_.next(); }

  void expect(Tok kind, const char* what) {
    if (cur_.kind != kind) throw SyntaxError(cur_.offset, std::string("expected ") + what);
    advance();
  }

  NodePtr expr() {
    NodePtr lhs = term();
    while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
      NodeKind k = cur_.kind == Tok::Plus ? NodeKind::Add : NodeKind::Sub;
      advance();
      lhs = make(k, {lhs, term()});
    }
    return lhs;
  }

  NodePtr term() {
    NodePtr lhs = unary();
    while (cur_.kind == Tok::Star || cur_.kind == Tok::Slash) {
      const bool div = cur_.kind == Tok::Slash;
      advance();
      if (div && is_integer_literal(*lhs) && cur_.kind == Tok::Number && cur_.integer) {
        Token denom = cur_;
        advance();
        if (cur_.kind != Tok::Caret) {
          lhs = rational(*lhs, denom);
          continue;
        }
        NodePtr d = literal(denom);
        advance();
        lhs = make(NodeKind::Div, {lhs, make(NodeKind::Pow, {d, unary()})});
        continue;
      }
      lhs = make(div ? NodeKind::Div : NodeKind::Mul, {lhs, unary()});
    }
    return lhs;
  }

  NodePtr unary() {
    if (cur_.kind == Tok::Minus) {
      advance();
      return make(NodeKind::Neg, {unary()});
    }
    if (cur_.kind == Tok::Plus) {
      advance();
      return unary();
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (cur_.kind == Tok::Caret) {
      advance();
      return make(NodeKind::Pow, {base, unary()});
    }
    return base;
  }

  NodePtr primary() {
    switch (cur_.kind) {
      case Tok::Number: {
        NodePtr n = literal(cur_);
        advance();
        return n;
      }
      case Tok::LParen: {
        advance();
        NodePtr e = expr();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::Name: return name();
      case Tok::End: throw SyntaxError(cur_.offset, "unexpected end of input");
      default:
        throw SyntaxError(cur_.offset, "unexpected '" + std::string(cur_.text) + "'");
    }
  }

  NodePtr name() {
    Token id = cur_;
    advance();
    if (cur_.kind == Tok::LParen) {
      auto it = std::find_if(kFunctions.begin(), kFunctions.end(),
                             [&](const FuncInfo& f) { return f.name == id.text; });
      if (it == kFunctions.end()) throw UnknownFunction(std::string(id.text));
      advance();
      std::vector<NodePtr> args;
      if (cur_.kind != Tok::RParen) {
        args.push_back(expr());
        while (cur_.kind == Tok::Comma) {
          advance();
          args.push_back(expr());
        }
      }
      expect(Tok::RParen, "')'");
      if (args.size() != it->arity)
        throw ArityError(std::string(it->name) + " expects " + std::to_string(it->arity) +
                         " argument(s), got " + std::to_string(args.size()));
      auto n = std::make_shared<Node>();
      n->kind = NodeKind::Call;
      n->func = it->func;
      n->text = std::string(it->name);
      n->children = std::move(args);
      return n;
    }
    auto it = std::find(vars_.begin(), vars_.end(), id.text);
    if (it == vars_.end()) throw UnknownVariable(std::string(id.text));
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Variable;
    n->text = std::string(id.text);
    n->var_index = static_cast<std::size_t>(it - vars_.begin());
    return n;
  }

  static bool is_integer_literal(const Node& n) {
    return n.kind == NodeKind::Number &&
           n.text.find_first_of(".eE") == std::string::npos;
  }

  static NodePtr literal(const Token& tok) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Number;
    n->text = std::string(tok.text);
    n->value = parse_double(tok.text, tok.offset);
    return n;
  }

  static NodePtr rational(const Node& num, const Token& denom) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Rational;
    n->text = num.text + "/" + std::string(denom.text);
    n->value = num.value / parse_double(denom.text, denom.offset);
    return n;
  }

  Lexer lex_;
  const VarSet& vars_;
  Token cur_;
};

// Postfix program executed on a small value stack.
enum class Op : std::uint8_t { Push, Load, Neg, Add, Sub, Mul, Div, Pow, Sin, Cos, Exp, Abs, Sqrt, Min, Max };

struct Instr {
  Op op;
  std::uint32_t index;
  double value;
};

void compile(const Node& n, std::vector<Instr>& out, std::size_t depth, std::size_t& max_depth) {
  auto binary = [&](Op op) {
    compile(*n.children[0], out, depth, max_depth);
    compile(*n.children[1], out, depth + 1, max_depth);
    out.push_back({op, 0, 0.0});
  };
  switch (n.kind) {
    case NodeKind::Number:
    case NodeKind::Rational:
      max_depth = std::max(max_depth, depth + 1);
      out.push_back({Op::Push, 0, n.value});
      return;
    case NodeKind::Variable:
      max_depth = std::max(max_depth, depth + 1);
      out.push_back({Op::Load, static_cast<std::uint32_t>(n.var_index), 0.0});
      return;
    case NodeKind::Neg:
      compile(*n.children[0], out, depth, max_depth);
      out.push_back({Op::Neg, 0, 0.0});
      return;
    case NodeKind::Add: binary(Op::Add); return;
    case NodeKind::Sub: binary(Op::Sub); return;
    case NodeKind::Mul: binary(Op::Mul); return;
    case NodeKind::Div: binary(Op::Div); return;
    case NodeKind::Pow: binary(Op::Pow); return;
    case NodeKind::Call:
      switch (n.func) {
        case Func::Min: binary(Op::Min); return;
        case Func::Max: binary(Op::Max); return;
        default: break;
      }
      compile(*n.children[0], out, depth, max_depth);
      switch (n.func) {
        case Func::Sin: out.push_back({Op::Sin, 0, 0.0}); break;
        case Func::Cos: out.push_back({Op::Cos, 0, 0.0}); break;
        case Func::Exp: out.push_back({Op::Exp, 0, 0.0}); break;
        case Func::Abs: out.push_back({Op::Abs, 0, 0.0}); break;
        case Func::Sqrt: out.push_back({Op::Sqrt, 0, 0.0}); break;
        default: break;
      }
      return;
  }
}

bool references_variable(const Node& n, std::string_view name) {
  if (n.kind == NodeKind::Variable) return name.empty() || n.text == name;
  return std::any_of(n.children.begin(), n.children.end(),
                     [&](const NodePtr& c) { return references_variable(*c, name); });
}

constexpr std::size_t kInlineStack = 32;

}  // namespace

struct Expr::Impl {
  std::string source;
  VarSet vars;
  NodePtr root;
  std::vector<Instr> program;
  std::size_t stack_depth = 1;
  bool constant = true;
};

Expr::Expr() {
  auto impl = std::make_shared<Impl>();
  auto zero = std::make_shared<Node>();
  zero->text = "0";
  impl->source = "0";
  impl->root = zero;
  impl->program.push_back({Op::Push, 0, 0.0});
  impl_ = std::move(impl);
}

Expr::Expr(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

Expr Expr::parse(std::string_view text, const VarSet& vars) {
  auto impl = std::make_shared<Impl>();
  impl->source = std::string(text);
  impl->vars = vars;
  impl->root = Parser(impl->source, impl->vars).parse();
  std::size_t depth = 0;
  compile(*impl->root, impl->program, 0, depth);
  impl->stack_depth = depth;
  impl->constant = !references_variable(*impl->root, {});
  return Expr(std::move(impl));
}

double Expr::eval(std::span<const double> values) const {
  const Impl& im = *impl_;
  std::array<double, kInlineStack> inline_stack{};
  std::vector<double> heap_stack;
  double* st = inline_stack.data();
  if (im.stack_depth > kInlineStack) {
    heap_stack.resize(im.stack_depth);
    st = heap_stack.data();
  }
  std::size_t sp = 0;
  for (const Instr& ins : im.program) {
    switch (ins.op) {
      case Op::Push: st[sp++] = ins.value; break;
      case Op::Load:
        if (ins.index >= values.size())
          throw Error("variable '" + im.vars[ins.index] + "' is not bound");
        st[sp++] = values[ins.index];
        break;
      case Op::Neg: st[sp - 1] = -st[sp - 1]; break;
      case Op::Add: --sp; st[sp - 1] += st[sp]; break;
      case Op::Sub: --sp; st[sp - 1] -= st[sp]; break;
      case Op::Mul: --sp; st[sp - 1] *= st[sp]; break;
      case Op::Div:
        --sp;
        if (st[sp] == 0.0) throw DomainError("division by zero in '" + im.source + "'");
        st[sp - 1] /= st[sp];
        break;
      case Op::Pow: --sp; st[sp - 1] = std::pow(st[sp - 1], st[sp]); break;
      case Op::Sin: st[sp - 1] = std::sin(st[sp - 1]); break;
      case Op::Cos: st[sp - 1] = std::cos(st[sp - 1]); break;
      case Op::Exp: st[sp - 1] = std::exp(st[sp - 1]); break;
      case Op::Abs: st[sp - 1] = std::fabs(st[sp - 1]); break;
      case Op::Sqrt:
        if (st[sp - 1] < 0.0) throw DomainError("sqrt of a negative value in '" + im.source + "'");
        st[sp - 1] = std::sqrt(st[sp - 1]);
        break;
      case Op::Min:
        --sp;
        if (std::isnan(st[sp]) || std::isnan(st[sp - 1]))
          throw DomainError("NaN argument to min in '" + im.source + "'");
        st[sp - 1] = std::min(st[sp - 1], st[sp]);
        break;
      case Op::Max:
        --sp;
        if (std::isnan(st[sp]) || std::isnan(st[sp - 1]))
          throw DomainError("NaN argument to max in '" + im.source + "'");
        st[sp - 1] = std::max(st[sp - 1], st[sp]);
        break;
    }
  }
  const double r = st[0];
  if (!std::isfinite(r)) throw DomainError("non-finite result in '" + im.source + "'");
  return r;
}

double Expr::eval(const std::map<std::string, double>& env) const {
  std::vector<double> values(impl_->vars.size(), 0.0);
  for (std::size_t i = 0; i < impl_->vars.size(); ++i) {
    auto it = env.find(impl_->vars[i]);
    if (it != env.end()) {
      values[i] = it->second;
    } else if (uses(impl_->vars[i])) {
      throw Error("variable '" + impl_->vars[i] + "' is not bound");
    }
  }
  return eval(values);
}

const Node& Expr::root() const { return *impl_->root; }
const VarSet& Expr::vars() const { return impl_->vars; }
const std::string& Expr::source() const { return impl_->source; }
bool Expr::is_constant() const { return impl_->constant; }
bool Expr::uses(std::string_view var) const { return references_variable(*impl_->root, var); }

bool structurally_equal(const Node& a, const Node& b) {
  if (a.kind != b.kind || a.children.size() != b.children.size()) return false;
  switch (a.kind) {
    case NodeKind::Number:
    case NodeKind::Rational:
      if (a.text != b.text) return false;
      break;
    case NodeKind::Variable:
      if (a.text != b.text || a.var_index != b.var_index) return false;
      break;
    case NodeKind::Call:
      if (a.func != b.func) return false;
      break;
    default: break;
  }
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!structurally_equal(*a.children[i], *b.children[i])) return false;
  return true;
}

std::string pretty(const Node& n) {
  auto bin = [&](const char* op) {
    return "(" + pretty(*n.children[0]) + op + pretty(*n.children[1]) + ")";
  };
  switch (n.kind) {
    case NodeKind::Number:
    case NodeKind::Variable: return n.text;
    case NodeKind::Rational: return "(" + n.text + ")";
    case NodeKind::Neg: return "(-" + pretty(*n.children[0]) + ")";
    case NodeKind::Add: return bin("+");
    case NodeKind::Sub: return bin("-");
    case NodeKind::Mul: return bin("*");
    case NodeKind::Div: return bin("/");
    case NodeKind::Pow: return bin("^");
    case NodeKind::Call: {
      std::string s = n.text + "(";
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i) s += ",";
        s += pretty(*n.children[i]);
      }
      return s + ")";
    }
  }
  return {};
}

double eval_constant(std::string_view text) {
  return Expr::parse(text, vars::none).eval(std::span<const double>{});
}

}  // namespace hamcert
