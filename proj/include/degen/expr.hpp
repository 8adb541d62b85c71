#pragma once

// A deliberately tiny expression language for generating functions.
//
//   expr   := term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := ("+"|"-") factor | power
//   power  := primary ("^" factor)?        right-associative, signed exponents ok
//   primary:= NUMBER | IDENT | IDENT "(" expr ("," expr)* ")" | "(" expr ")"
//
// Unary sign binds looser than "^": "-2^2" is -(2^2). Builtins are the unary
// functions sin cos tan exp log sqrt sinh cosh tanh abs plus the constants
// pi and e. Identifiers resolve first to declared variables, then to named
// constants captured at parse time. Evaluation is generic over the scalar:
// complex for values, dual for derivatives. abs has no complex derivative and
// throws under dual evaluation; everything else follows principal branches.

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "degen/dual.hpp"
#include "degen/errors.hpp"

namespace degen {

enum class NodeKind { number, constant, variable, unary_minus, binary, call };
enum class BinOp { add, sub, mul, div, pow };
enum class Func { sin, cos, tan, exp, log, sqrt, sinh, cosh, tanh, abs };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  NodeKind kind{};
  double number = 0.0;   // number | constant value
  std::string name;      // constant | variable name
  BinOp op{};
  Func fn{};
  ExprPtr a, b;
};

struct Expr {
  ExprPtr root;
  std::vector<std::string> vars;  // declared variable slots, in declaration order

  explicit operator bool() const { return static_cast<bool>(root); }
};

// ---- construction helpers (used by programmatic builders and the parser) ----

inline ExprPtr make_number(double v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::number;
  n->number = v;
  return n;
}
inline ExprPtr make_constant(std::string name, double v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::constant;
  n->name = std::move(name);
  n->number = v;
  return n;
}
inline ExprPtr make_variable(std::string name) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::variable;
  n->name = std::move(name);
  return n;
}
inline ExprPtr make_unary_minus(ExprPtr a) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::unary_minus;
  n->a = std::move(a);
  return n;
}
inline ExprPtr make_binary(BinOp op, ExprPtr a, ExprPtr b) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::binary;
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}
inline ExprPtr make_call(Func fn, ExprPtr a) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::call;
  n->fn = fn;
  n->a = std::move(a);
  return n;
}

namespace detail {

struct FuncName {
  std::string_view name;
  Func fn;
};
inline constexpr std::array<FuncName, 10> kFuncs = {{{"sin", Func::sin},
                                                     {"cos", Func::cos},
                                                     {"tan", Func::tan},
                                                     {"exp", Func::exp},
                                                     {"log", Func::log},
                                                     {"sqrt", Func::sqrt},
                                                     {"sinh", Func::sinh},
                                                     {"cosh", Func::cosh},
                                                     {"tanh", Func::tanh},
                                                     {"abs", Func::abs}}};

inline const FuncName* find_func(std::string_view name) {
  for (const auto& f : kFuncs)
    if (f.name == name) return &f;
  return nullptr;
}

inline std::string_view func_name(Func fn) {
  for (const auto& f : kFuncs)
    if (f.fn == fn) return f.name;
  return "?";
}

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& vars,
         const std::map<std::string, double>& constants)
      : text_(text), vars_(vars), constants_(constants) {}

  ExprPtr run() {
    ExprPtr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size())
      throw SyntaxError(pos_, "unexpected trailing input");
    return e;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  const std::vector<std::string>& vars_;
  const std::map<std::string, double>& constants_;

  void skip_ws() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
            text_[pos_] == '\r'))
      ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool consume(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExprPtr parse_expr() {
    ExprPtr lhs = parse_term();
    for (;;) {
      const char c = peek();
      if (c == '+' || c == '-') {
        ++pos_;
        lhs = make_binary(c == '+' ? BinOp::add : BinOp::sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr parse_term() {
    ExprPtr lhs = parse_factor();
    for (;;) {
      const char c = peek();
      if (c == '*' || c == '/') {
        ++pos_;
        lhs = make_binary(c == '*' ? BinOp::mul : BinOp::div, lhs, parse_factor());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr parse_factor() {
    const char c = peek();
    if (c == '+') {
      ++pos_;
      return parse_factor();
    }
    if (c == '-') {
      ++pos_;
      return make_unary_minus(parse_factor());
    }
    ExprPtr base = parse_primary();
    if (peek() == '^') {
      ++pos_;
      return make_binary(BinOp::pow, base, parse_factor());
    }
    return base;
  }

  ExprPtr parse_primary() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      ExprPtr e = parse_expr();
      if (!consume(')')) throw SyntaxError(pos_, "expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
    throw SyntaxError(pos_, pos_ < text_.size() ? "expected a number, identifier or '('"
                                                : "unexpected end of input");
  }

  ExprPtr parse_number() {
    const std::size_t start = pos_;
    double value = 0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{}) throw SyntaxError(start, "malformed number");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return make_number(value);
  }

  ExprPtr parse_ident() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    std::string name(text_.substr(start, pos_ - start));

    if (peek() == '(') {
      ++pos_;
      std::vector<ExprPtr> args;
      args.push_back(parse_expr());
      while (consume(',')) args.push_back(parse_expr());
      if (!consume(')')) throw SyntaxError(pos_, "expected ')'");
      const FuncName* f = find_func(name);
      if (!f) throw UnknownIdentifierError(name, start);
      if (args.size() != 1) throw ArityError(name, start, args.size());
      return make_call(f->fn, args[0]);
    }

    for (const auto& v : vars_)
      if (v == name) return make_variable(name);
    if (auto it = constants_.find(name); it != constants_.end())
      return make_constant(name, it->second);
    if (name == "pi") return make_constant("pi", 3.14159265358979323846);
    if (name == "e") return make_constant("e", 2.71828182845904523536);
    throw UnknownIdentifierError(name, start);
  }
};

}  // namespace detail

/// Parse `text` over the declared variable slots. Named constants fold into
/// the AST at parse time; pi and e are always available.
inline Expr parse(std::string_view text, std::vector<std::string> allowed_vars,
                  const std::map<std::string, double>& constants = {}) {
  detail::Parser p(text, allowed_vars, constants);
  return Expr{p.run(), std::move(allowed_vars)};
}

// ---- evaluation ----

/// Small fixed-capacity name/value table; generator pipelines bind at most
/// four variables.
template <class T>
class Bindings {
 public:
  Bindings() = default;
  Bindings(std::initializer_list<std::pair<std::string_view, T>> init) {
    for (const auto& [n, v] : init) set(n, v);
  }

  void set(std::string_view name, const T& value) {
    for (std::size_t i = 0; i < size_; ++i)
      if (names_[i] == name) {
        values_[i] = value;
        return;
      }
    if (size_ == names_.size()) throw Error("too many bound variables");
    names_[size_] = name;
    values_[size_] = value;
    ++size_;
  }

  const T* find(std::string_view name) const {
    for (std::size_t i = 0; i < size_; ++i)
      if (names_[i] == name) return &values_[i];
    return nullptr;
  }

 private:
  std::array<std::string_view, 6> names_{};
  std::array<T, 6> values_{};
  std::size_t size_ = 0;
};

namespace detail {

template <class T>
T eval_call(Func fn, const T& x) {
  using std::cos;
  using std::cosh;
  using std::exp;
  using std::log;
  using std::sin;
  using std::sinh;
  using std::sqrt;
  using std::tan;
  using std::tanh;
  switch (fn) {
    case Func::sin: return sin(x);
    case Func::cos: return cos(x);
    case Func::tan: return tan(x);
    case Func::exp: return exp(x);
    case Func::log: return log(x);
    case Func::sqrt: return sqrt(x);
    case Func::sinh: return sinh(x);
    case Func::cosh: return cosh(x);
    case Func::tanh: return tanh(x);
    case Func::abs:
      if constexpr (is_dual_v<T>) {
        throw NonAnalyticNodeError();
      } else {
        return T(std::abs(x));
      }
  }
  throw Error("unreachable function dispatch");
}

inline bool integral_exponent(const ExprNode& n, long& out) {
  if (n.kind != NodeKind::number) return false;
  const double v = n.number;
  if (!(v >= -64.0 && v <= 64.0)) return false;
  if (v != static_cast<double>(static_cast<long>(v))) return false;
  out = static_cast<long>(v);
  return true;
}

template <class T>
T eval_node(const ExprNode& n, const Bindings<T>& b) {
  switch (n.kind) {
    case NodeKind::number: return T(n.number);
    case NodeKind::constant: return T(n.number);
    case NodeKind::variable: {
      const T* v = b.find(n.name);
      if (!v) throw UnboundVariableError(n.name);
      return *v;
    }
    case NodeKind::unary_minus: return -eval_node(*n.a, b);
    case NodeKind::binary: {
      if (n.op == BinOp::pow) {
        // literal small-integer exponents keep real bases exactly real
        long k = 0;
        if (integral_exponent(*n.b, k)) return ipow(eval_node(*n.a, b), k);
        using std::pow;
        return pow(eval_node(*n.a, b), eval_node(*n.b, b));
      }
      const T lhs = eval_node(*n.a, b);
      const T rhs = eval_node(*n.b, b);
      switch (n.op) {
        case BinOp::add: return lhs + rhs;
        case BinOp::sub: return lhs - rhs;
        case BinOp::mul: return lhs * rhs;
        case BinOp::div: return lhs / rhs;
        default: break;
      }
      break;
    }
    case NodeKind::call: return eval_call(n.fn, eval_node<T>(*n.a, b));
  }
  throw Error("unreachable node dispatch");
}

}  // namespace detail

/// Generic evaluation; T is Complex, Dual<Complex>, or a nested dual.
template <class T>
T eval_generic(const Expr& e, const Bindings<T>& b) {
  return detail::eval_node(*e.root, b);
}

inline Complex eval(const Expr& e, const Bindings<Complex>& b) { return eval_generic(e, b); }
inline CDual eval_dual(const Expr& e, const Bindings<CDual>& b) { return eval_generic(e, b); }

// ---- introspection ----

namespace detail {
inline void collect_vars(const ExprNode& n, std::vector<std::string>& out) {
  switch (n.kind) {
    case NodeKind::variable:
      for (const auto& v : out)
        if (v == n.name) return;
      out.push_back(n.name);
      return;
    case NodeKind::unary_minus:
    case NodeKind::call: collect_vars(*n.a, out); return;
    case NodeKind::binary:
      collect_vars(*n.a, out);
      collect_vars(*n.b, out);
      return;
    default: return;
  }
}
inline bool node_has_abs(const ExprNode& n) {
  switch (n.kind) {
    case NodeKind::call:
      return n.fn == Func::abs || node_has_abs(*n.a);
    case NodeKind::unary_minus: return node_has_abs(*n.a);
    case NodeKind::binary: return node_has_abs(*n.a) || node_has_abs(*n.b);
    default: return false;
  }
}
}  // namespace detail

/// Variables actually referenced, in first-appearance order.
inline std::vector<std::string> free_vars(const Expr& e) {
  std::vector<std::string> out;
  detail::collect_vars(*e.root, out);
  return out;
}

inline bool has_abs(const Expr& e) { return detail::node_has_abs(*e.root); }

inline bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case NodeKind::number: return a->number == b->number;
    case NodeKind::constant: return a->name == b->name && a->number == b->number;
    case NodeKind::variable: return a->name == b->name;
    case NodeKind::unary_minus: return structurally_equal(a->a, b->a);
    case NodeKind::binary:
      return a->op == b->op && structurally_equal(a->a, b->a) && structurally_equal(a->b, b->b);
    case NodeKind::call: return a->fn == b->fn && structurally_equal(a->a, b->a);
  }
  return false;
}

inline bool structurally_equal(const Expr& a, const Expr& b) {
  return structurally_equal(a.root, b.root);
}

// ---- canonical text ----

namespace detail {
inline void unparse_node(const ExprNode& n, std::string& out) {
  switch (n.kind) {
    case NodeKind::number: {
      std::array<char, 32> buf;
      auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), n.number);
      out.append(buf.data(), ptr);
      return;
    }
    case NodeKind::constant:
    case NodeKind::variable: out += n.name; return;
    case NodeKind::unary_minus:
      out += "(-";
      unparse_node(*n.a, out);
      out += ')';
      return;
    case NodeKind::binary: {
      out += '(';
      unparse_node(*n.a, out);
      switch (n.op) {
        case BinOp::add: out += " + "; break;
        case BinOp::sub: out += " - "; break;
        case BinOp::mul: out += " * "; break;
        case BinOp::div: out += " / "; break;
        case BinOp::pow: out += " ^ "; break;
      }
      unparse_node(*n.b, out);
      out += ')';
      return;
    }
    case NodeKind::call:
      out += func_name(n.fn);
      out += '(';
      unparse_node(*n.a, out);
      out += ')';
      return;
  }
}
}  // namespace detail

/// Fully parenthesized canonical text; reparsing yields a structurally
/// identical tree (given the same variables and constants).
inline std::string unparse(const Expr& e) {
  std::string out;
  detail::unparse_node(*e.root, out);
  return out;
}

// ---- quadrature ----

namespace detail {
// 16-point Gauss-Legendre abscissae and weights on [-1, 1].
inline constexpr std::array<std::array<double, 2>, 16> kGauss16 = {{
    {-9.89400934991649939e-01, 2.71524594117540374e-02},
    {-9.44575023073232600e-01, 6.22535239386477063e-02},
    {-8.65631202387831755e-01, 9.51585116824925914e-02},
    {-7.55404408355002999e-01, 1.24628971255534030e-01},
    {-6.17876244402643771e-01, 1.49595988816576764e-01},
    {-4.58016777657227370e-01, 1.69156519395002619e-01},
    {-2.81603550779258915e-01, 1.82603415044923612e-01},
    {-9.50125098376374544e-02, 1.89450610455068585e-01},
    {9.50125098376374544e-02, 1.89450610455068585e-01},
    {2.81603550779258915e-01, 1.82603415044923612e-01},
    {4.58016777657227370e-01, 1.69156519395002619e-01},
    {6.17876244402643771e-01, 1.49595988816576764e-01},
    {7.55404408355002999e-01, 1.24628971255534030e-01},
    {8.65631202387831755e-01, 9.51585116824925914e-02},
    {9.44575023073232600e-01, 6.22535239386477063e-02},
    {9.89400934991649939e-01, 2.71524594117540374e-02},
}};

template <class T, class F>
T gauss_level(const F& f, const T& lo, const T& hi, int level) {
  const long panels = 1L << level;
  T total{};
  for (long p = 0; p < panels; ++p) {
    // panel ends are affine in (lo, hi), so derivatives propagate exactly
    const T a = lo + (hi - lo) * (static_cast<double>(p) / static_cast<double>(panels));
    const T b = lo + (hi - lo) * (static_cast<double>(p + 1) / static_cast<double>(panels));
    const T mid = (a + b) * 0.5;
    const T half = (b - a) * 0.5;
    T acc{};
    for (const auto& [x, w] : kGauss16) acc = acc + w * f(mid + half * x);
    total = total + acc * half;
  }
  return total;
}
}  // namespace detail

/// Composite Gauss-Legendre with panel doubling until two successive
/// refinements agree to `tol` in the value slot. Refinement decisions depend
/// only on value slots, so dual evaluation follows the same panel sequence as
/// plain evaluation and the value slots match exactly.
template <class T, class F>
T integrate_function(const F& f, const T& lo, const T& hi, double tol = 1e-12,
                     int max_levels = 30) {
  T prev = detail::gauss_level(f, lo, hi, 0);
  for (int level = 1; level <= max_levels; ++level) {
    T cur = detail::gauss_level(f, lo, hi, level);
    if (value_magnitude(cur - prev) < tol) return cur;
    prev = cur;
  }
  throw NoConvergenceError("quadrature did not converge within " +
                           std::to_string(max_levels) + " refinements");
}

/// Integrate expression `f` in variable `var` from lo to hi with the other
/// bindings held fixed. Differentiable in the limits under dual evaluation.
template <class T>
T integrate(const Expr& f, std::string_view var, const T& lo, const T& hi,
            const Bindings<T>& fixed, double tol = 1e-12, int max_levels = 30) {
  Bindings<T> b = fixed;
  auto g = [&](const T& u) {
    b.set(var, u);
    return eval_generic(f, b);
  };
  return integrate_function(g, lo, hi, tol, max_levels);
}

}  // namespace degen
