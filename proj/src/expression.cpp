#include "infsup/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <vector>

#include "infsup/errors.hpp"

namespace infsup {

enum class Op { Constant, X, Y, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Tan, Exp, Log, Sqrt };

struct Expression::Node {
  Op op = Op::Constant;
  double value = 0.0;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

NodePtr make_const(double v) {
  auto n = std::make_shared<Expression::Node>();
  n->op = Op::Constant;
  n->value = v;
  return n;
}

NodePtr make_var(Op op) {
  auto n = std::make_shared<Expression::Node>();
  n->op = op;
  return n;
}

bool is_const(const NodePtr& n, double v) {
  return n->op == Op::Constant && n->value == v;
}

double eval(const NodePtr& n, double x, double y);

// Builders fold constants and drop neutral elements so repeated
// differentiation does not blow up the tree.
NodePtr make_unary(Op op, NodePtr a) {
  if (a->op == Op::Constant) {
    auto tmp = std::make_shared<Expression::Node>();
    tmp->op = op;
    tmp->lhs = a;
    return make_const(eval(tmp, 0.0, 0.0));
  }
  if (op == Op::Neg && a->op == Op::Neg) {
    return a->lhs;
  }
  auto n = std::make_shared<Expression::Node>();
  n->op = op;
  n->lhs = std::move(a);
  return n;
}

NodePtr make_binary(Op op, NodePtr a, NodePtr b) {
  if (a->op == Op::Constant && b->op == Op::Constant) {
    auto tmp = std::make_shared<Expression::Node>();
    tmp->op = op;
    tmp->lhs = a;
    tmp->rhs = b;
    return make_const(eval(tmp, 0.0, 0.0));
  }
  switch (op) {
    case Op::Add:
      if (is_const(a, 0.0)) return b;
      if (is_const(b, 0.0)) return a;
      break;
    case Op::Sub:
      if (is_const(b, 0.0)) return a;
      if (is_const(a, 0.0)) return make_unary(Op::Neg, b);
      break;
    case Op::Mul:
      if (is_const(a, 0.0) || is_const(b, 0.0)) return make_const(0.0);
      if (is_const(a, 1.0)) return b;
      if (is_const(b, 1.0)) return a;
      break;
    case Op::Div:
      if (is_const(a, 0.0)) return make_const(0.0);
      if (is_const(b, 1.0)) return a;
      break;
    case Op::Pow:
      if (is_const(b, 0.0)) return make_const(1.0);
      if (is_const(b, 1.0)) return a;
      break;
    default:
      break;
  }
  auto n = std::make_shared<Expression::Node>();
  n->op = op;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

double eval(const NodePtr& n, double x, double y) {
  switch (n->op) {
    case Op::Constant: return n->value;
    case Op::X: return x;
    case Op::Y: return y;
    case Op::Add: return eval(n->lhs, x, y) + eval(n->rhs, x, y);
    case Op::Sub: return eval(n->lhs, x, y) - eval(n->rhs, x, y);
    case Op::Mul: return eval(n->lhs, x, y) * eval(n->rhs, x, y);
    case Op::Div: return eval(n->lhs, x, y) / eval(n->rhs, x, y);
    case Op::Pow: return std::pow(eval(n->lhs, x, y), eval(n->rhs, x, y));
    case Op::Neg: return -eval(n->lhs, x, y);
    case Op::Sin: return std::sin(eval(n->lhs, x, y));
    case Op::Cos: return std::cos(eval(n->lhs, x, y));
    case Op::Tan: return std::tan(eval(n->lhs, x, y));
    case Op::Exp: return std::exp(eval(n->lhs, x, y));
    case Op::Log: return std::log(eval(n->lhs, x, y));
    case Op::Sqrt: return std::sqrt(eval(n->lhs, x, y));
  }
  return 0.0;
}

bool depends_on_variables(const NodePtr& n) {
  if (n->op == Op::X || n->op == Op::Y) return true;
  if (n->lhs && depends_on_variables(n->lhs)) return true;
  return n->rhs && depends_on_variables(n->rhs);
}

NodePtr diff(const NodePtr& n, Op var) {
  const auto& a = n->lhs;
  const auto& b = n->rhs;
  switch (n->op) {
    case Op::Constant: return make_const(0.0);
    case Op::X:
    case Op::Y: return make_const(n->op == var ? 1.0 : 0.0);
    case Op::Add: return make_binary(Op::Add, diff(a, var), diff(b, var));
    case Op::Sub: return make_binary(Op::Sub, diff(a, var), diff(b, var));
    case Op::Neg: return make_unary(Op::Neg, diff(a, var));
    case Op::Mul:
      return make_binary(Op::Add, make_binary(Op::Mul, diff(a, var), b),
                         make_binary(Op::Mul, a, diff(b, var)));
    case Op::Div:
      return make_binary(
          Op::Div,
          make_binary(Op::Sub, make_binary(Op::Mul, diff(a, var), b),
                      make_binary(Op::Mul, a, diff(b, var))),
          make_binary(Op::Mul, b, b));
    case Op::Pow:
      if (!depends_on_variables(b)) {
        // d(a^c) = c a^(c-1) a'
        return make_binary(
            Op::Mul,
            make_binary(Op::Mul, b, make_binary(Op::Pow, a, make_binary(Op::Sub, b, make_const(1.0)))),
            diff(a, var));
      }
      // d(a^b) = a^b (b' log a + b a'/a)
      return make_binary(
          Op::Mul, n,
          make_binary(Op::Add, make_binary(Op::Mul, diff(b, var), make_unary(Op::Log, a)),
                      make_binary(Op::Div, make_binary(Op::Mul, b, diff(a, var)), a)));
    case Op::Sin: return make_binary(Op::Mul, make_unary(Op::Cos, a), diff(a, var));
    case Op::Cos:
      return make_unary(Op::Neg, make_binary(Op::Mul, make_unary(Op::Sin, a), diff(a, var)));
    case Op::Tan: {
      const NodePtr c = make_unary(Op::Cos, a);
      return make_binary(Op::Div, diff(a, var), make_binary(Op::Mul, c, c));
    }
    case Op::Exp: return make_binary(Op::Mul, n, diff(a, var));
    case Op::Log: return make_binary(Op::Div, diff(a, var), a);
    case Op::Sqrt:
      return make_binary(Op::Div, diff(a, var), make_binary(Op::Mul, make_const(2.0), n));
  }
  return make_const(0.0);
}

std::string to_text(const NodePtr& n) {
  auto bin = [&](const char* sym) {
    return "(" + to_text(n->lhs) + " " + sym + " " + to_text(n->rhs) + ")";
  };
  auto fn = [&](const char* name) { return std::string(name) + "(" + to_text(n->lhs) + ")"; };
  switch (n->op) {
    case Op::Constant: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", n->value);
      return n->value < 0 ? "(" + std::string(buf) + ")" : std::string(buf);
    }
    case Op::X: return "x";
    case Op::Y: return "y";
    case Op::Add: return bin("+");
    case Op::Sub: return bin("-");
    case Op::Mul: return bin("*");
    case Op::Div: return bin("/");
    case Op::Pow: return bin("^");
    case Op::Neg: return "(-" + to_text(n->lhs) + ")";
    case Op::Sin: return fn("sin");
    case Op::Cos: return fn("cos");
    case Op::Tan: return fn("tan");
    case Op::Exp: return fn("exp");
    case Op::Log: return fn("log");
    case Op::Sqrt: return fn("sqrt");
  }
  return "?";
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip_space();
    if (pos_ != text_.size()) {
      fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    }
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError, "column " + std::to_string(pos_ + 1) + ": " + what +
                                           " in \"" + std::string(text_) + "\"");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make_binary(Op::Add, lhs, term());
      } else if (accept('-')) {
        lhs = make_binary(Op::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make_binary(Op::Mul, lhs, unary());
      } else if (accept('/')) {
        lhs = make_binary(Op::Div, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) {
      return make_unary(Op::Neg, unary());
    }
    if (accept('+')) {
      return unary();
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (accept('^')) {
      return make_binary(Op::Pow, base, unary());
    }
    return base;
  }

  NodePtr atom() {
    skip_space();
    if (pos_ >= text_.size()) {
      fail("unexpected end of expression");
    }
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      if (!accept(')')) {
        fail("expected ')'");
      }
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::string rest(text_.substr(pos_));
      char* end = nullptr;
      const double v = std::strtod(rest.c_str(), &end);
      if (end == rest.c_str()) {
        fail("malformed number");
      }
      pos_ += static_cast<std::size_t>(end - rest.c_str());
      return make_const(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
      const std::string name(text_.substr(start, pos_ - start));
      if (name == "x") return make_var(Op::X);
      if (name == "y") return make_var(Op::Y);
      if (name == "pi") return make_const(std::numbers::pi);
      Op op;
      if (name == "sin") op = Op::Sin;
      else if (name == "cos") op = Op::Cos;
      else if (name == "tan") op = Op::Tan;
      else if (name == "exp") op = Op::Exp;
      else if (name == "log") op = Op::Log;
      else if (name == "sqrt") op = Op::Sqrt;
      else {
        pos_ = start;
        fail("unknown identifier '" + name + "'");
      }
      if (!accept('(')) {
        fail("expected '(' after " + name);
      }
      NodePtr arg = expr();
      if (!accept(')')) {
        fail("expected ')'");
      }
      return make_unary(op, arg);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression::Expression() : node_(make_const(0.0)) {}

Expression Expression::parse(std::string_view text) {
  return Expression(Parser(text).parse());
}

Expression Expression::constant(double value) {
  return Expression(make_const(value));
}

double Expression::operator()(double x, double y) const {
  return eval(node_, x, y);
}

Expression Expression::derivative(char variable) const {
  INFSUP_THROW_IF(variable != 'x' && variable != 'y', ErrorCode::ParseError,
                  "derivative variable must be x or y");
  return Expression(diff(node_, variable == 'x' ? Op::X : Op::Y));
}

bool Expression::is_constant() const {
  return !depends_on_variables(node_);
}

std::string Expression::str() const {
  return to_text(node_);
}

Expression operator+(const Expression& a, const Expression& b) {
  return Expression(make_binary(Op::Add, a.node_, b.node_));
}
Expression operator-(const Expression& a, const Expression& b) {
  return Expression(make_binary(Op::Sub, a.node_, b.node_));
}
Expression operator*(const Expression& a, const Expression& b) {
  return Expression(make_binary(Op::Mul, a.node_, b.node_));
}
Expression operator/(const Expression& a, const Expression& b) {
  return Expression(make_binary(Op::Div, a.node_, b.node_));
}
Expression operator-(const Expression& a) {
  return Expression(make_unary(Op::Neg, a.node_));
}

}  // namespace infsup
