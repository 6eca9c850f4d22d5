#pragma once

// Scalar expressions in x and y with symbolic differentiation. Grammar:
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := ('-' | '+') unary | power
//   power  := atom ('^' unary)?
//   atom   := number | 'x' | 'y' | 'pi' | name '(' expr ')' | '(' expr ')'
// Functions: sin, cos, tan, exp, log, sqrt.

#include <memory>
#include <string>
#include <string_view>

namespace infsup {

class Expression {
 public:
  /// Throws ParseError with the offending column.
  static Expression parse(std::string_view text);
  static Expression constant(double value);

  Expression();  ///< the constant 0

  [[nodiscard]] double operator()(double x, double y) const;
  /// Symbolic partial derivative; `variable` is 'x' or 'y'.
  [[nodiscard]] Expression derivative(char variable) const;
  [[nodiscard]] bool is_constant() const;
  [[nodiscard]] std::string str() const;

  friend Expression operator+(const Expression& a, const Expression& b);
  friend Expression operator-(const Expression& a, const Expression& b);
  friend Expression operator*(const Expression& a, const Expression& b);
  friend Expression operator/(const Expression& a, const Expression& b);
  friend Expression operator-(const Expression& a);

  struct Node;

 private:
  explicit Expression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

}  // namespace infsup
