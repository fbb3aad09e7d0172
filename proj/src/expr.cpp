#include "bvp4/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>

#include "bvp4/errors.hpp"

namespace bvp4::expr {

namespace {

std::shared_ptr<Node> make_node(Node::Kind kind) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  return n;
}

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw NonFiniteError(std::string("non-finite result in ") + what);
  return v;
}

double apply_function(Function fn, double x) {
  switch (fn) {
    case Function::exp:
      return checked(std::exp(x), "exp");
    case Function::ln:
      if (x <= 0.0) throw DomainError("ln of non-positive argument " + std::to_string(x));
      return std::log(x);
    case Function::sin:
      return std::sin(x);
    case Function::cos:
      return std::cos(x);
    case Function::abs:
      return std::fabs(x);
    case Function::sqrt:
      if (x < 0.0) throw DomainError("sqrt of negative argument " + std::to_string(x));
      return std::sqrt(x);
    case Function::sign:
      return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
  }
  return 0.0;
}

double power(double base, double exponent) {
  if (base == 0.0 && exponent < 0.0) throw DomainError("0 raised to a negative power");
  if (base < 0.0 && exponent != std::floor(exponent))
    throw DomainError("negative base with non-integer exponent");
  return checked(std::pow(base, exponent), "^");
}

double eval_node(const Node& n, double t, double u) {
  switch (n.kind) {
    case Node::Kind::number:
      return n.value;
    case Node::Kind::var_t:
      return t;
    case Node::Kind::var_u:
      return u;
    case Node::Kind::pi:
      return std::numbers::pi;
    case Node::Kind::euler:
      return std::numbers::e;
    case Node::Kind::negate:
      return -eval_node(n.lhs.node(), t, u);
    case Node::Kind::call:
      return apply_function(n.fn, eval_node(n.lhs.node(), t, u));
    case Node::Kind::binary: {
      const double a = eval_node(n.lhs.node(), t, u);
      const double b = eval_node(n.rhs.node(), t, u);
      switch (n.op) {
        case BinaryOp::add:
          return checked(a + b, "+");
        case BinaryOp::sub:
          return checked(a - b, "-");
        case BinaryOp::mul:
          return checked(a * b, "*");
        case BinaryOp::div:
          if (b == 0.0) throw DomainError("division by zero");
          return checked(a / b, "/");
        case BinaryOp::pow:
          return power(a, b);
      }
    }
  }
  return 0.0;
}

std::string format_number(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), std::fabs(v));
  std::string s(buf.data(), end);
  return v < 0.0 ? "(-" + s + ")" : s;
}

char op_char(BinaryOp op) {
  switch (op) {
    case BinaryOp::add: return '+';
    case BinaryOp::sub: return '-';
    case BinaryOp::mul: return '*';
    case BinaryOp::div: return '/';
    case BinaryOp::pow: return '^';
  }
  return '?';
}

void print(const Node& n, std::string& out) {
  switch (n.kind) {
    case Node::Kind::number:
      out += format_number(n.value);
      return;
    case Node::Kind::var_t:
      out += 't';
      return;
    case Node::Kind::var_u:
      out += 'u';
      return;
    case Node::Kind::pi:
      out += "pi";
      return;
    case Node::Kind::euler:
      out += 'e';
      return;
    case Node::Kind::negate:
      out += "(-";
      print(n.lhs.node(), out);
      out += ')';
      return;
    case Node::Kind::call:
      out += function_name(n.fn);
      out += '(';
      print(n.lhs.node(), out);
      out += ')';
      return;
    case Node::Kind::binary:
      out += '(';
      print(n.lhs.node(), out);
      out += ' ';
      out += op_char(n.op);
      out += ' ';
      print(n.rhs.node(), out);
      out += ')';
      return;
  }
}

// ---- parser ---------------------------------------------------------------

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse_all() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError(ParseError::Kind::syntax, 0, "empty expression");
    Expr e = parse_expr();
    skip_ws();
    if (pos_ < text_.size())
      throw ParseError(ParseError::Kind::syntax, pos_,
                       std::string("unexpected '") + text_[pos_] + "'");
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(ParseError::Kind::syntax, pos_, what);
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::binary(BinaryOp::add, lhs, parse_term());
      } else if (accept('-')) {
        lhs = Expr::binary(BinaryOp::sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_term() {
    Expr lhs = parse_factor();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::binary(BinaryOp::mul, lhs, parse_factor());
      } else if (accept('/')) {
        lhs = Expr::binary(BinaryOp::div, lhs, parse_factor());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_factor() {
    Expr base = parse_unary();
    if (accept('^')) return Expr::binary(BinaryOp::pow, base, parse_factor());
    return base;
  }

  Expr parse_unary() {
    if (accept('-')) return Expr::negate(parse_unary());
    return parse_atom();
  }

  Expr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    if (c == '(') {
      ++pos_;
      Expr inner = parse_expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    fail(std::string("unexpected '") + c + "'");
  }

  Expr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t mantissa = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) {
      pos_ = start;
      fail("malformed number");
    }
    // An exponent is only consumed when digits follow, so "2e" stays 2 then e.
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        digits();
      }
    }
    double value = 0.0;
    const char* first = text_.data() + start;
    const char* last = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
      pos_ = start;
      fail("malformed number");
    }
    return Expr::number(value);
  }

  Expr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "t") return Expr::var_t();
    if (name == "u") return Expr::var_u();
    if (name == "pi") return Expr::pi();
    if (name == "e") return Expr::euler();

    std::optional<Function> fn;
    if (name == "exp") fn = Function::exp;
    else if (name == "ln") fn = Function::ln;
    else if (name == "sin") fn = Function::sin;
    else if (name == "cos") fn = Function::cos;
    else if (name == "abs") fn = Function::abs;
    else if (name == "sqrt") fn = Function::sqrt;
    if (!fn)
      throw ParseError(ParseError::Kind::unknown_identifier, start,
                       "unknown identifier '" + std::string(name) + "'");

    if (!accept('(')) fail("expected '(' after " + std::string(name));
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == ')')
      throw ParseError(ParseError::Kind::arity, pos_,
                       std::string(name) + " takes exactly one argument, got none");
    Expr arg = parse_expr();
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == ',')
      throw ParseError(ParseError::Kind::arity, pos_,
                       std::string(name) + " takes exactly one argument");
    if (!accept(')')) fail("expected ')'");
    return Expr::call(*fn, arg);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// ---- simplifying constructors used by diff_u ----------------------------

Expr add(const Expr& a, const Expr& b) {
  if (a.is_number(0.0)) return b;
  if (b.is_number(0.0)) return a;
  if (a.is_number() && b.is_number()) return Expr::number(a.node().value + b.node().value);
  return Expr::binary(BinaryOp::add, a, b);
}

Expr neg(const Expr& a) {
  if (a.is_number()) return Expr::number(-a.node().value);
  if (a.node().kind == Node::Kind::negate) return a.node().lhs;
  return Expr::negate(a);
}

Expr sub(const Expr& a, const Expr& b) {
  if (b.is_number(0.0)) return a;
  if (a.is_number(0.0)) return neg(b);
  if (a.is_number() && b.is_number()) return Expr::number(a.node().value - b.node().value);
  return Expr::binary(BinaryOp::sub, a, b);
}

Expr mul(const Expr& a, const Expr& b) {
  if (a.is_number(0.0) || b.is_number(0.0)) return Expr::number(0.0);
  if (a.is_number(1.0)) return b;
  if (b.is_number(1.0)) return a;
  if (a.is_number() && b.is_number()) return Expr::number(a.node().value * b.node().value);
  return Expr::binary(BinaryOp::mul, a, b);
}

Expr div(const Expr& a, const Expr& b) {
  if (a.is_number(0.0)) return Expr::number(0.0);
  if (b.is_number(1.0)) return a;
  return Expr::binary(BinaryOp::div, a, b);
}

Expr pow(const Expr& a, const Expr& b) {
  if (b.is_number(1.0)) return a;
  if (b.is_number(0.0)) return Expr::number(1.0);
  return Expr::binary(BinaryOp::pow, a, b);
}

Expr fn(Function f, const Expr& a) { return Expr::call(f, a); }

}  // namespace

// ---- Expr -------------------------------------------------------------------

const Node& Expr::node() const noexcept {
  static const Node zero{};
  return node_ ? *node_ : zero;
}

Expr Expr::number(double value) {
  auto n = make_node(Node::Kind::number);
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::var_t() { return Expr(make_node(Node::Kind::var_t)); }

Expr Expr::var_u() {
  auto n = make_node(Node::Kind::var_u);
  n->has_u = true;
  return Expr(std::move(n));
}

Expr Expr::pi() { return Expr(make_node(Node::Kind::pi)); }
Expr Expr::euler() { return Expr(make_node(Node::Kind::euler)); }

Expr Expr::negate(Expr operand) {
  auto n = make_node(Node::Kind::negate);
  n->has_u = operand.depends_on_u();
  n->lhs = std::move(operand);
  return Expr(std::move(n));
}

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
  auto n = make_node(Node::Kind::binary);
  n->op = op;
  n->has_u = lhs.depends_on_u() || rhs.depends_on_u();
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return Expr(std::move(n));
}

Expr Expr::call(Function f, Expr arg) {
  auto n = make_node(Node::Kind::call);
  n->fn = f;
  n->has_u = arg.depends_on_u();
  n->lhs = std::move(arg);
  return Expr(std::move(n));
}

double Expr::eval(double t, double u) const { return eval_node(node(), t, u); }

std::string Expr::str() const {
  std::string out;
  print(node(), out);
  return out;
}

bool Expr::depends_on_u() const noexcept { return node().has_u; }

bool Expr::is_number() const noexcept { return node().kind == Node::Kind::number; }

bool Expr::is_number(double value) const noexcept {
  return is_number() && node().value == value;
}

const char* function_name(Function f) {
  switch (f) {
    case Function::exp: return "exp";
    case Function::ln: return "ln";
    case Function::sin: return "sin";
    case Function::cos: return "cos";
    case Function::abs: return "abs";
    case Function::sqrt: return "sqrt";
    case Function::sign: return "sign";
  }
  return "?";
}

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

Expr diff_u(const Expr& e) {
  if (!e.depends_on_u()) return Expr::number(0.0);
  const Node& n = e.node();
  switch (n.kind) {
    case Node::Kind::var_u:
      return Expr::number(1.0);
    case Node::Kind::number:
    case Node::Kind::var_t:
    case Node::Kind::pi:
    case Node::Kind::euler:
      return Expr::number(0.0);
    case Node::Kind::negate:
      return neg(diff_u(n.lhs));
    case Node::Kind::call: {
      const Expr& a = n.lhs;
      const Expr da = diff_u(a);
      switch (n.fn) {
        case Function::exp: return mul(e, da);
        case Function::ln: return div(da, a);
        case Function::sin: return mul(fn(Function::cos, a), da);
        case Function::cos: return neg(mul(fn(Function::sin, a), da));
        case Function::abs: return mul(fn(Function::sign, a), da);
        case Function::sqrt: return div(da, mul(Expr::number(2.0), e));
        case Function::sign: return Expr::number(0.0);
      }
      break;
    }
    case Node::Kind::binary: {
      const Expr& a = n.lhs;
      const Expr& b = n.rhs;
      switch (n.op) {
        case BinaryOp::add: return add(diff_u(a), diff_u(b));
        case BinaryOp::sub: return sub(diff_u(a), diff_u(b));
        case BinaryOp::mul: return add(mul(diff_u(a), b), mul(a, diff_u(b)));
        case BinaryOp::div:
          return div(sub(mul(diff_u(a), b), mul(a, diff_u(b))), pow(b, Expr::number(2.0)));
        case BinaryOp::pow:
          if (!b.depends_on_u()) {
            const Expr reduced = b.is_number() ? Expr::number(b.node().value - 1.0)
                                               : sub(b, Expr::number(1.0));
            return mul(mul(b, pow(a, reduced)), diff_u(a));
          }
          if (!a.depends_on_u()) return mul(mul(e, fn(Function::ln, a)), diff_u(b));
          return mul(e, add(mul(diff_u(b), fn(Function::ln, a)), div(mul(b, diff_u(a)), a)));
      }
      break;
    }
  }
  return Expr::number(0.0);
}

}  // namespace bvp4::expr
