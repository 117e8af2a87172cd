#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bogofock/mode_operator.hpp"
#include "bogofock/types.hpp"

namespace bogofock::expr {

struct SourcePos {
  int line = 1;
  int column = 1;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, SourcePos pos);
  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

class EvalError : public std::runtime_error {
 public:
  explicit EvalError(const std::string& message) : std::runtime_error(message) {}
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// AST over real literals, names (parameters, the index variables j and k,
/// and the builtin imaginary unit i), the binary operators + - * / ^, unary
/// minus, and the fixed function set {exp, tanh, cosh, sinh, sqrt, delta,
/// recip}.
struct Expr {
  enum class Kind { number, name, unary_minus, binary, call };
  Kind kind = Kind::number;
  double number = 0.0;     // Kind::number
  std::string name;        // Kind::name, Kind::call
  char op = 0;             // Kind::binary: one of + - * / ^
  std::vector<ExprPtr> args;
  SourcePos pos;
};

/// Precedence: ^ above unary minus above * / above + -. The + - * / level is
/// left associative, ^ is right associative. Errors carry line and column.
ExprPtr parse(std::string_view src);

/// Prints with minimal parentheses; the output reparses to an equal tree.
std::string print(const ExprPtr& e);

/// Structural equality, ignoring source positions.
bool equal(const ExprPtr& a, const ExprPtr& b);

/// Replace every occurrence of the name `var` by `replacement`.
ExprPtr substitute(const ExprPtr& e, const std::string& var, const ExprPtr& replacement);

struct Bindings {
  std::map<std::string, double> params;
  long j = 0;
  long k = 0;
};

/// Deterministic IEEE-double complex arithmetic. The names i, j, k are
/// builtin; all other free names must be bound by params.
Complex eval(const ExprPtr& e, const Bindings& bindings);

/// Operator family given by entry expressions over the indices j, k.
struct OperatorFamily {
  ExprPtr u;  // optional
  ExprPtr v;  // optional; absent means v = 0
  bool auto_u = false;
  std::map<std::string, double> params;
};

Matrix build_matrix(const ExprPtr& e, const std::map<std::string, double>& params, int modes);

/// Evaluates the family entries over 1 <= j, k <= modes. With auto_u and a
/// diagonal real v, u is completed as diag(sqrt(1 + v_jj^2)); without either
/// u falls back to the identity.
BogoliubovMap build_operator(const OperatorFamily& family, int modes);

}  // namespace bogofock::expr
