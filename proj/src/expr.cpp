#include "bk/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

namespace bk {
namespace detail {

enum class Kind { Number, Param, Pi, E, Neg, Add, Sub, Mul, Div, Pow, Fun };

enum class FunId { Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Log, Sqrt };

struct ExprNode {
  Kind kind;
  double value = 0.0;  // Number
  FunId fun = FunId::Sin;
  std::shared_ptr<const ExprNode> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make(Kind k, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

NodePtr num(double v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Number;
  n->value = v;
  return n;
}

bool is_num(const NodePtr& n, double v) {
  return n->kind == Kind::Number && n->value == v;
}

const char* fun_name(FunId f) {
  switch (f) {
    case FunId::Sin: return "sin";
    case FunId::Cos: return "cos";
    case FunId::Tan: return "tan";
    case FunId::Sinh: return "sinh";
    case FunId::Cosh: return "cosh";
    case FunId::Tanh: return "tanh";
    case FunId::Exp: return "exp";
    case FunId::Log: return "log";
    case FunId::Sqrt: return "sqrt";
  }
  return "?";
}

double eval_node(const ExprNode* n, double t);

// Building blocks with light simplification: constant folding plus the 0/1
// identities. Division, powers and function applications of constants fold
// only when they evaluate to a finite value, so domain errors stay at
// evaluation time.
NodePtr add(NodePtr a, NodePtr b) {
  if (a->kind == Kind::Number && b->kind == Kind::Number)
    return num(a->value + b->value);
  if (is_num(a, 0.0)) return b;
  if (is_num(b, 0.0)) return a;
  return make(Kind::Add, std::move(a), std::move(b));
}

NodePtr neg(NodePtr a) {
  if (a->kind == Kind::Number) return num(-a->value);
  if (a->kind == Kind::Neg) return a->a;
  return make(Kind::Neg, std::move(a));
}

NodePtr sub(NodePtr a, NodePtr b) {
  if (a->kind == Kind::Number && b->kind == Kind::Number)
    return num(a->value - b->value);
  if (is_num(b, 0.0)) return a;
  if (is_num(a, 0.0)) return neg(std::move(b));
  return make(Kind::Sub, std::move(a), std::move(b));
}

NodePtr mul(NodePtr a, NodePtr b) {
  if (a->kind == Kind::Number && b->kind == Kind::Number)
    return num(a->value * b->value);
  if (is_num(a, 0.0) || is_num(b, 0.0)) return num(0.0);
  if (is_num(a, 1.0)) return b;
  if (is_num(b, 1.0)) return a;
  return make(Kind::Mul, std::move(a), std::move(b));
}

NodePtr div(NodePtr a, NodePtr b) {
  if (a->kind == Kind::Number && b->kind == Kind::Number && b->value != 0.0)
    return num(a->value / b->value);
  if (is_num(b, 1.0)) return a;
  if (is_num(a, 0.0)) return num(0.0);
  return make(Kind::Div, std::move(a), std::move(b));
}

NodePtr pow_node(NodePtr a, NodePtr b) {
  if (is_num(b, 1.0)) return a;
  if (is_num(b, 0.0)) return num(1.0);
  if (a->kind == Kind::Number && b->kind == Kind::Number) {
    auto n = make(Kind::Pow, a, b);
    try {
      const double v = eval_node(n.get(), 0.0);
      if (std::isfinite(v)) return num(v);
    } catch (const error&) {
    }
    return n;
  }
  return make(Kind::Pow, std::move(a), std::move(b));
}

NodePtr fun(FunId f, NodePtr a) {
  auto node = std::make_shared<ExprNode>();
  node->kind = Kind::Fun;
  node->fun = f;
  node->a = std::move(a);
  NodePtr n = std::move(node);
  if (n->a->kind == Kind::Number) {
    try {
      const double v = eval_node(n.get(), 0.0);
      if (std::isfinite(v)) return num(v);
    } catch (const error&) {
    }
  }
  return n;
}

bool contains_param(const ExprNode* n) {
  if (!n) return false;
  if (n->kind == Kind::Param) return true;
  return contains_param(n->a.get()) || contains_param(n->b.get());
}

[[noreturn]] void domain_fail(const std::string& what) {
  throw error(errc::eval_domain, "evaluation domain error: " + what);
}

double eval_node(const ExprNode* n, double t) {
  switch (n->kind) {
    case Kind::Number: return n->value;
    case Kind::Param: return t;
    case Kind::Pi: return std::numbers::pi;
    case Kind::E: return std::numbers::e;
    case Kind::Neg: return -eval_node(n->a.get(), t);
    case Kind::Add: return eval_node(n->a.get(), t) + eval_node(n->b.get(), t);
    case Kind::Sub: return eval_node(n->a.get(), t) - eval_node(n->b.get(), t);
    case Kind::Mul: return eval_node(n->a.get(), t) * eval_node(n->b.get(), t);
    case Kind::Div: {
      const double d = eval_node(n->b.get(), t);
      if (d == 0.0) domain_fail("division by zero");
      return eval_node(n->a.get(), t) / d;
    }
    case Kind::Pow: {
      const double base = eval_node(n->a.get(), t);
      const double ex = eval_node(n->b.get(), t);
      if (base > 0.0) return std::pow(base, ex);
      if (base == 0.0) {
        if (ex > 0.0) return 0.0;
        if (ex == 0.0) return 1.0;
        domain_fail("0 raised to a negative power");
      }
      // Negative base: only integer exponents stay real.
      if (ex == std::nearbyint(ex)) return std::pow(base, ex);
      domain_fail("negative base with non-integer exponent");
    }
    case Kind::Fun: {
      const double x = eval_node(n->a.get(), t);
      switch (n->fun) {
        case FunId::Sin: return std::sin(x);
        case FunId::Cos: return std::cos(x);
        case FunId::Tan: return std::tan(x);
        case FunId::Sinh: return std::sinh(x);
        case FunId::Cosh: return std::cosh(x);
        case FunId::Tanh: return std::tanh(x);
        case FunId::Exp: return std::exp(x);
        case FunId::Log:
          if (x <= 0.0) domain_fail("log of a non-positive value");
          return std::log(x);
        case FunId::Sqrt:
          if (x < 0.0) domain_fail("sqrt of a negative value");
          return std::sqrt(x);
      }
      domain_fail("unknown function");
    }
  }
  domain_fail("unknown node");
}

NodePtr diff_node(const NodePtr& n) {
  switch (n->kind) {
    case Kind::Number:
    case Kind::Pi:
    case Kind::E: return num(0.0);
    case Kind::Param: return num(1.0);
    case Kind::Neg: return neg(diff_node(n->a));
    case Kind::Add: return add(diff_node(n->a), diff_node(n->b));
    case Kind::Sub: return sub(diff_node(n->a), diff_node(n->b));
    case Kind::Mul:
      return add(mul(diff_node(n->a), n->b), mul(n->a, diff_node(n->b)));
    case Kind::Div:
      // (u/v)' = (u'v - uv')/v^2
      return div(sub(mul(diff_node(n->a), n->b), mul(n->a, diff_node(n->b))),
                 mul(n->b, n->b));
    case Kind::Pow: {
      if (!contains_param(n->b.get())) {
        // f^c: c*f^(c-1)*f'
        return mul(mul(n->b, pow_node(n->a, sub(n->b, num(1.0)))),
                   diff_node(n->a));
      }
      // f^g = exp(g log f): f^g * (g' log f + g f'/f)
      return mul(n, add(mul(diff_node(n->b), fun(FunId::Log, n->a)),
                        div(mul(n->b, diff_node(n->a)), n->a)));
    }
    case Kind::Fun: {
      const NodePtr da = diff_node(n->a);
      switch (n->fun) {
        case FunId::Sin: return mul(fun(FunId::Cos, n->a), da);
        case FunId::Cos: return neg(mul(fun(FunId::Sin, n->a), da));
        case FunId::Tan: {
          // 1 + tan^2
          auto tt = fun(FunId::Tan, n->a);
          return mul(add(num(1.0), mul(tt, tt)), da);
        }
        case FunId::Sinh: return mul(fun(FunId::Cosh, n->a), da);
        case FunId::Cosh: return mul(fun(FunId::Sinh, n->a), da);
        case FunId::Tanh: {
          auto th = fun(FunId::Tanh, n->a);
          return mul(sub(num(1.0), mul(th, th)), da);
        }
        case FunId::Exp: return mul(fun(FunId::Exp, n->a), da);
        case FunId::Log: return div(da, n->a);
        case FunId::Sqrt:
          return div(da, mul(num(2.0), fun(FunId::Sqrt, n->a)));
      }
      return num(0.0);
    }
  }
  return num(0.0);
}

// Precedence levels for printing: Add/Sub 1, Mul/Div 2, Neg 3, Pow 4.
int precedence(const ExprNode* n) {
  switch (n->kind) {
    case Kind::Add:
    case Kind::Sub: return 1;
    case Kind::Mul:
    case Kind::Div: return 2;
    case Kind::Neg: return 3;
    case Kind::Pow: return 4;
    case Kind::Number: return n->value < 0.0 ? 3 : 5;
    default: return 5;
  }
}

void print_node(std::string& out, const ExprNode* n, int parent_prec,
                bool right_side) {
  const int prec = precedence(n);
  const bool parens =
      prec < parent_prec ||
      (prec == parent_prec && right_side && (prec == 1 || prec == 2)) ||
      // a^b^c is right-associative; parenthesize a left pow child
      (prec == parent_prec && !right_side && prec == 4);
  if (parens) out.push_back('(');
  switch (n->kind) {
    case Kind::Number: out += format_double(n->value); break;
    case Kind::Param: out.push_back('t'); break;
    case Kind::Pi: out += "pi"; break;
    case Kind::E: out.push_back('e'); break;
    case Kind::Neg:
      out.push_back('-');
      print_node(out, n->a.get(), 3, true);
      break;
    case Kind::Add:
      print_node(out, n->a.get(), 1, false);
      out += " + ";
      print_node(out, n->b.get(), 1, true);
      break;
    case Kind::Sub:
      print_node(out, n->a.get(), 1, false);
      out += " - ";
      print_node(out, n->b.get(), 1, true);
      break;
    case Kind::Mul:
      print_node(out, n->a.get(), 2, false);
      out.push_back('*');
      print_node(out, n->b.get(), 2, true);
      break;
    case Kind::Div:
      print_node(out, n->a.get(), 2, false);
      out.push_back('/');
      print_node(out, n->b.get(), 2, true);
      break;
    case Kind::Pow:
      print_node(out, n->a.get(), 4, false);
      out.push_back('^');
      print_node(out, n->b.get(), 4, true);
      break;
    case Kind::Fun:
      out += fun_name(n->fun);
      out.push_back('(');
      print_node(out, n->a.get(), 0, false);
      out.push_back(')');
      break;
  }
  if (parens) out.push_back(')');
}

// ---------------------------------------------------------------------------
// Lexer + recursive descent parser
// ---------------------------------------------------------------------------

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::size_t offset;
  double value = 0.0;
  std::string text;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < s.size() &&
         std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
      std::size_t j = i;
      while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) ||
                              s[j] == '.'))
        ++j;
      if (j < s.size() && (s[j] == 'e' || s[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < s.size() && (s[k] == '+' || s[k] == '-')) ++k;
        if (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) {
          ++k;
          while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k])))
            ++k;
          j = k;
        }
      }
      double v = 0.0;
      auto res = std::from_chars(s.data() + i, s.data() + j, v);
      if (res.ec != std::errc() || res.ptr != s.data() + j)
        throw parse_error(i, {"number"}, "syntax error at offset " +
                                             std::to_string(i) +
                                             ": malformed number");
      out.push_back({Tok::Number, i, v, std::string(s.substr(i, j - i))});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) ||
                              s[j] == '_'))
        ++j;
      out.push_back({Tok::Ident, i, 0.0, std::string(s.substr(i, j - i))});
      i = j;
      continue;
    }
    Tok k;
    switch (c) {
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      case '/': k = Tok::Slash; break;
      case '^': k = Tok::Caret; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      default:
        throw parse_error(i, {"operator", "number", "identifier"},
                          "syntax error at offset " + std::to_string(i) +
                              ": unexpected character '" + std::string(1, c) +
                              "'");
    }
    out.push_back({k, i, 0.0, std::string(1, c)});
    ++i;
  }
  out.push_back({Tok::End, s.size(), 0.0, ""});
  return out;
}

struct Parser {
  const std::vector<Token>& toks;
  std::size_t pos = 0;

  const Token& peek() const { return toks[pos]; }
  const Token& advance() { return toks[pos++]; }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    const Token& tk = peek();
    std::string msg = "syntax error at offset " + std::to_string(tk.offset) +
                      ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += " or ";
      msg += "'" + expected[i] + "'";
    }
    if (tk.kind == Tok::End)
      msg += ", found end of input";
    else
      msg += ", found '" + tk.text + "'";
    throw parse_error(tk.offset, std::move(expected), std::move(msg));
  }

  void expect(Tok k, const char* name) {
    if (peek().kind != k) fail({name});
    advance();
  }

  NodePtr parse_expr_rule() {
    NodePtr lhs = parse_term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const Tok op = advance().kind;
      NodePtr rhs = parse_term();
      lhs = op == Tok::Plus ? add(lhs, rhs) : sub(lhs, rhs);
    }
    return lhs;
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      const Tok op = advance().kind;
      NodePtr rhs = parse_unary();
      lhs = op == Tok::Star ? mul(lhs, rhs) : div(lhs, rhs);
    }
    return lhs;
  }

  NodePtr parse_unary() {
    if (peek().kind == Tok::Minus) {
      advance();
      return neg(parse_unary());
    }
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_atom();
    if (peek().kind == Tok::Caret) {
      advance();
      // Right-associative; the exponent may carry a unary minus.
      NodePtr ex = parse_unary();
      return pow_node(base, ex);
    }
    return base;
  }

  NodePtr parse_atom() {
    const Token& tk = peek();
    switch (tk.kind) {
      case Tok::Number:
        advance();
        return num(tk.value);
      case Tok::LParen: {
        advance();
        NodePtr inner = parse_expr_rule();
        expect(Tok::RParen, ")");
        return inner;
      }
      case Tok::Ident: {
        advance();
        if (tk.text == "t") return make(Kind::Param);
        if (tk.text == "pi") return make(Kind::Pi);
        if (tk.text == "e") return make(Kind::E);
        static const std::map<std::string, FunId> funs = {
            {"sin", FunId::Sin},   {"cos", FunId::Cos},   {"tan", FunId::Tan},
            {"sinh", FunId::Sinh}, {"cosh", FunId::Cosh}, {"tanh", FunId::Tanh},
            {"exp", FunId::Exp},   {"log", FunId::Log},   {"sqrt", FunId::Sqrt}};
        auto it = funs.find(tk.text);
        if (it == funs.end())
          throw error(errc::unknown_identifier,
                      "unknown identifier '" + tk.text + "' at offset " +
                          std::to_string(tk.offset));
        expect(Tok::LParen, "(");
        NodePtr arg = parse_expr_rule();
        expect(Tok::RParen, ")");
        return fun(it->second, arg);
      }
      default:
        fail({"number", "identifier", "("});
    }
  }
};

}  // namespace
}  // namespace detail

double Expr::eval(double t) const {
  if (!node_) throw error(errc::eval_domain, "empty expression");
  return detail::eval_node(node_.get(), t);
}

Expr Expr::derivative() const {
  if (!node_) throw error(errc::eval_domain, "empty expression");
  return Expr(detail::diff_node(node_));
}

std::string Expr::str() const {
  if (!node_) return "";
  std::string out;
  detail::print_node(out, node_.get(), 0, false);
  return out;
}

bool Expr::is_constant() const { return !detail::contains_param(node_.get()); }

Expr Expr::number(double v) { return Expr(detail::num(v)); }

Expr Expr::parameter() { return Expr(detail::make(detail::Kind::Param)); }

Expr parse_expr(std::string_view text,
                const std::map<std::string, double>* constants) {
  auto toks = detail::lex(text);
  if (constants) {
    for (auto& tk : toks) {
      if (tk.kind != detail::Tok::Ident) continue;
      auto it = constants->find(tk.text);
      if (it != constants->end()) {
        tk.kind = detail::Tok::Number;
        tk.value = it->second;
      }
    }
  }
  detail::Parser p{toks};
  auto root = p.parse_expr_rule();
  if (p.peek().kind != detail::Tok::End) p.fail({"operator", "end of input"});
  return Expr(std::move(root));
}

}  // namespace bk
