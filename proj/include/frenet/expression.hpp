#pragma once

// Curvature-profile expression language.
//
//   expr    := term (('+'|'-') term)*
//   term    := factor (('*'|'/') factor)*
//   factor  := unary ('^' factor)?
//   unary   := '-' unary | primary
//   primary := NUMBER | 's' | FUNC '(' expr ')' | '(' expr ')'
//   FUNC    := sin | cos | tan | sqrt | exp | log | abs
//
// Evaluation is forward-mode: every evaluation yields the value and its
// derivative with respect to s, so profiles carry exact kappa' and tau'.

#include <memory>
#include <string>
#include <string_view>

namespace frenet {

/// Value together with its derivative with respect to s.
struct Dual {
  double value = 0.0;
  double deriv = 0.0;
};

class Expression {
 public:
  enum class Kind { Number, Variable, Negate, Add, Subtract, Multiply, Divide, Power, Call };
  enum class Function { Sin, Cos, Tan, Sqrt, Exp, Log, Abs };

  struct Node;

  /// Throws SYNTAX_ERROR, UNKNOWN_IDENTIFIER or ARITY_MISMATCH with the
  /// 1-based column of the offending token.
  static Expression parse(std::string_view source);

  static Expression number(double v);
  static Expression variable();
  static Expression negate(Expression a);
  static Expression binary(Kind op, Expression a, Expression b);
  static Expression call(Function f, Expression a);

  /// Canonical text; parse(to_string()) reproduces the same tree.
  std::string to_string() const;

  /// Throws PROFILE_EVAL_ERROR (with s) when the value or derivative is not finite.
  Dual evaluate(double s) const;
  double operator()(double s) const { return evaluate(s).value; }

  friend bool operator==(const Expression& a, const Expression& b);

  const Node& root() const { return *root_; }

 private:
  explicit Expression(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

struct Expression::Node {
  Kind kind = Kind::Number;
  double value = 0.0;
  Function function = Function::Sin;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

std::string_view function_name(Expression::Function f);

}  // namespace frenet
