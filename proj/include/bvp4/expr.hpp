#pragma once

// Expressions for the nonlinearity f(t,u).
//
// Grammar (whitespace insignificant):
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := unary ('^' factor)?
//   unary  := '-' unary | atom
//   atom   := number | 't' | 'u' | 'pi' | 'e' | ident '(' expr ')' | '(' expr ')'
//
// Recognised functions: exp, ln, sin, cos, abs, sqrt. `sign` exists only as an
// internal node produced by differentiating `abs`.

#include <memory>
#include <string>
#include <string_view>

namespace bvp4::expr {

enum class Function { exp, ln, sin, cos, abs, sqrt, sign };
enum class BinaryOp { add, sub, mul, div, pow };

struct Node;

/// Immutable handle to an expression tree. Copies share the tree.
class Expr {
 public:
  /// The literal 0.
  Expr() = default;

  static Expr number(double value);
  static Expr var_t();
  static Expr var_u();
  static Expr pi();
  static Expr euler();
  static Expr negate(Expr operand);
  static Expr binary(BinaryOp op, Expr lhs, Expr rhs);
  static Expr call(Function fn, Expr arg);

  /// Evaluates at (t, u). Throws DomainError for ln of a non-positive value,
  /// sqrt of a negative value, 0 raised to a negative power, division by
  /// zero or a negative base with a non-integer exponent; throws
  /// NonFiniteError when a result overflows.
  double eval(double t, double u) const;

  /// Fully parenthesised text that parses back to an equivalent tree.
  std::string str() const;

  bool depends_on_u() const noexcept;
  bool is_number() const noexcept;
  bool is_number(double value) const noexcept;

  const Node& node() const noexcept;

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;  // null means the literal 0
};

struct Node {
  enum class Kind { number, var_t, var_u, pi, euler, negate, binary, call };

  Kind kind = Kind::number;
  double value = 0.0;
  BinaryOp op = BinaryOp::add;
  Function fn = Function::exp;
  Expr lhs;  // operand for negate / call
  Expr rhs;
  bool has_u = false;
};

/// Parses `text`. Throws ParseError with the byte offset of the problem.
Expr parse(std::string_view text);

/// Symbolic partial derivative with respect to u, lightly simplified.
/// d|x|/dx is taken as sign(x) with sign(0) = 0.
Expr diff_u(const Expr& e);

const char* function_name(Function fn);

}  // namespace bvp4::expr
