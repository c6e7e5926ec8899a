#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fbvp/errors.hpp"
#include "fbvp/green.hpp"

namespace fbvp::cli {

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset, std::vector<std::string> expected);
  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// Raised when evaluation leaves the domain of an operation or produces a
/// non-finite value. subexpression() is the printed offending node.
class ExpressionFault : public DomainError {
 public:
  ExpressionFault(const std::string& message, std::string subexpression)
      : DomainError(message), subexpression_(std::move(subexpression)) {}
  const std::string& subexpression() const noexcept { return subexpression_; }

 private:
  std::string subexpression_;
};

enum class Var { kT, kX, kR, kC };
enum class Func { kSqrt, kExp, kLog, kAbs, kPow, kSigma, kMl };

struct Node {
  enum class Kind { kNumber, kVariable, kConstant, kNeg, kBinary, kCall };
  Kind kind = Kind::kNumber;
  double value = 0.0;    // number literal, or bound constant value
  std::string name;      // variable, constant or function name
  Var var = Var::kT;
  Func func = Func::kSqrt;
  char op = 0;           // + - * / ^
  std::vector<Node> args;

  friend bool operator==(const Node&, const Node&) = default;
};

/// Variable values for one evaluation. t_complement, when set, is 1 - t
/// known without rounding; sigma uses it near t = 1.
struct Scope {
  std::optional<double> t, x, r, c;
  std::optional<double> t_complement;
};

/// Syntax tree over literals, the variables t, x, r, c, named constants,
/// + - * / ^, unary minus and sqrt, exp, log, abs, pow, sigma, ml.
class Expression {
 public:
  explicit Expression(Node root) : root_(std::move(root)) {}

  const Node& root() const noexcept { return root_; }

  /// sigma(.) needs a GreenFunction; pass nullptr when the expression has none.
  double evaluate(const Scope& scope, const GreenFunction* green = nullptr) const;

  /// Fully parenthesised text that parses back to the same tree.
  std::string to_string() const;

  bool uses(Var v) const;
  bool uses_sigma() const;

  friend bool operator==(const Expression&, const Expression&) = default;

 private:
  Node root_;
};

/// Names that parse as constants, with their values.
using Constants = std::map<std::string, double, std::less<>>;

/// Precedence from loosest: + -, then * /, then unary minus, then ^ (right
/// associative). Identifiers other than t, x, r, c, the function names and
/// the given constants are rejected.
Expression parse_expr(std::string_view src, const Constants& constants = {});

std::string to_string(const Node& node);

}  // namespace fbvp::cli
