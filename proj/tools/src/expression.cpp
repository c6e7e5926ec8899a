#include "fbvp/cli/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <utility>

#include "fbvp/specfun.hpp"

namespace fbvp::cli {

namespace {

struct Token {
  enum class Kind { kNumber, kIdent, kOp, kLParen, kRParen, kComma, kEnd, kInvalid };
  Kind kind;
  std::string_view text;
  std::size_t offset;
  double number = 0.0;
};

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    const std::size_t start = pos_;
    if (pos_ == src_.size()) return {Token::Kind::kEnd, {}, start};
    const char ch = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      double value = 0.0;
      const char* first = src_.data() + pos_;
      const auto [ptr, ec] = std::from_chars(first, src_.data() + src_.size(), value);
      if (ec != std::errc() || ptr == first) {
        ++pos_;
        return {Token::Kind::kInvalid, src_.substr(start, 1), start};
      }
      pos_ += static_cast<std::size_t>(ptr - first);
      return {Token::Kind::kNumber, src_.substr(start, pos_ - start), start, value};
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        ++pos_;
      }
      return {Token::Kind::kIdent, src_.substr(start, pos_ - start), start};
    }
    ++pos_;
    switch (ch) {
      case '*':
        if (pos_ < src_.size() && src_[pos_] == '*') {
          ++pos_;
          return {Token::Kind::kInvalid, src_.substr(start, 2), start};
        }
        [[fallthrough]];
      case '+':
      case '-':
      case '/':
      case '^':
        return {Token::Kind::kOp, src_.substr(start, 1), start};
      case '(':
        return {Token::Kind::kLParen, src_.substr(start, 1), start};
      case ')':
        return {Token::Kind::kRParen, src_.substr(start, 1), start};
      case ',':
        return {Token::Kind::kComma, src_.substr(start, 1), start};
      default:
        return {Token::Kind::kInvalid, src_.substr(start, 1), start};
    }
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;
};

struct FuncInfo {
  std::string_view name;
  Func func;
  std::size_t arity;
};

constexpr FuncInfo kFunctions[] = {
    {"sqrt", Func::kSqrt, 1}, {"exp", Func::kExp, 1},     {"log", Func::kLog, 1},
    {"abs", Func::kAbs, 1},   {"pow", Func::kPow, 2},     {"sigma", Func::kSigma, 1},
    {"ml", Func::kMl, 3},
};

const std::vector<std::string> kOperandStart{"number", "identifier", "'('", "'-'"};
const std::vector<std::string> kAfterOperand{"'+'", "'-'", "'*'", "'/'", "'^'", "')'", "','",
                                             "end of input"};

class Parser {
 public:
  Parser(std::string_view src, const Constants& constants) : lexer_(src), constants_(constants) {
    advance();
  }

  Node parse() {
    Node root = expr();
    if (tok_.kind != Token::Kind::kEnd) fail(kAfterOperand);
    if (depth_ != 0) fail({"')'"});
    return root;
  }

 private:
  void advance() { tok_ = lexer_.next(); }

  [[noreturn]] void fail(const std::vector<std::string>& expected) const {
    std::string found = tok_.kind == Token::Kind::kEnd ? "end of input" : "'" + std::string(tok_.text) + "'";
    throw ParseError("unexpected " + found + " at offset " + std::to_string(tok_.offset) +
                         ", expected one of: " + join(expected),
                     tok_.offset, expected);
  }

  bool at_op(char c) const { return tok_.kind == Token::Kind::kOp && tok_.text[0] == c; }

  static Node binary(char op, Node lhs, Node rhs) {
    Node n;
    n.kind = Node::Kind::kBinary;
    n.op = op;
    n.args.push_back(std::move(lhs));
    n.args.push_back(std::move(rhs));
    return n;
  }

  Node expr() {
    Node lhs = term();
    while (at_op('+') || at_op('-')) {
      const char op = tok_.text[0];
      advance();
      lhs = binary(op, std::move(lhs), term());
    }
    return lhs;
  }

  Node term() {
    Node lhs = unary();
    while (at_op('*') || at_op('/')) {
      const char op = tok_.text[0];
      advance();
      lhs = binary(op, std::move(lhs), unary());
    }
    return lhs;
  }

  Node unary() {
    if (at_op('-')) {
      advance();
      Node n;
      n.kind = Node::Kind::kNeg;
      n.args.push_back(unary());
      return n;
    }
    return power();
  }

  Node power() {
    Node base = primary();
    if (at_op('^')) {
      advance();
      return binary('^', std::move(base), unary());
    }
    return base;
  }

  Node primary() {
    Node n;
    switch (tok_.kind) {
      case Token::Kind::kNumber:
        n.kind = Node::Kind::kNumber;
        n.value = tok_.number;
        advance();
        return n;
      case Token::Kind::kLParen: {
        advance();
        ++depth_;
        n = expr();
        if (tok_.kind != Token::Kind::kRParen) fail(kAfterOperand);
        --depth_;
        advance();
        return n;
      }
      case Token::Kind::kIdent:
        return identifier();
      default:
        fail(kOperandStart);
    }
  }

  Node identifier() {
    const std::string name(tok_.text);
    const std::size_t offset = tok_.offset;
    advance();
    Node n;
    n.name = name;
    if (tok_.kind == Token::Kind::kLParen) {
      const FuncInfo* info = nullptr;
      for (const auto& f : kFunctions) {
        if (f.name == name) info = &f;
      }
      if (!info) throw ParseError("unknown function '" + name + "' at offset " + std::to_string(offset), offset, {"function name"});
      advance();
      ++depth_;
      n.kind = Node::Kind::kCall;
      n.func = info->func;
      if (tok_.kind != Token::Kind::kRParen) {
        n.args.push_back(expr());
        while (tok_.kind == Token::Kind::kComma) {
          advance();
          n.args.push_back(expr());
        }
      }
      if (tok_.kind != Token::Kind::kRParen) fail({"','", "')'"});
      if (n.args.size() != info->arity) {
        throw ParseError("function '" + name + "' takes " + std::to_string(info->arity) +
                             " argument(s), got " + std::to_string(n.args.size()) + " at offset " +
                             std::to_string(offset),
                         offset, {std::to_string(info->arity) + " argument(s)"});
      }
      --depth_;
      advance();
      return n;
    }
    static constexpr std::pair<std::string_view, Var> kVars[] = {
        {"t", Var::kT}, {"x", Var::kX}, {"r", Var::kR}, {"c", Var::kC}};
    for (const auto& [vname, var] : kVars) {
      if (vname == name) {
        n.kind = Node::Kind::kVariable;
        n.var = var;
        return n;
      }
    }
    if (auto it = constants_.find(name); it != constants_.end()) {
      n.kind = Node::Kind::kConstant;
      n.value = it->second;
      return n;
    }
    throw ParseError("unknown identifier '" + name + "' at offset " + std::to_string(offset), offset,
                     {"t", "x", "r", "c", "a bound constant"});
  }

  Lexer lexer_;
  const Constants& constants_;
  Token tok_{Token::Kind::kEnd, {}, 0};
  int depth_ = 0;
};

std::string number_text(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string_view func_name(Func f) {
  for (const auto& info : kFunctions) {
    if (info.func == f) return info.name;
  }
  return "?";
}

class Evaluator {
 public:
  Evaluator(const Scope& scope, const GreenFunction* green) : scope_(scope), green_(green) {}

  double eval(const Node& n) const {
    const double v = raw(n);
    if (!std::isfinite(v)) fault(n, "non-finite value");
    return v;
  }

 private:
  [[noreturn]] static void fault(const Node& n, const std::string& why) {
    const std::string text = to_string(n);
    throw ExpressionFault("expression fault in " + text + ": " + why, text);
  }

  double variable(const Node& n) const {
    const std::optional<double>* slot = nullptr;
    switch (n.var) {
      case Var::kT: slot = &scope_.t; break;
      case Var::kX: slot = &scope_.x; break;
      case Var::kR: slot = &scope_.r; break;
      case Var::kC: slot = &scope_.c; break;
    }
    if (!slot->has_value()) fault(n, "variable not bound here");
    return **slot;
  }

  // (value, 1 - value) with the complement exact where the tree allows it.
  std::pair<double, double> with_complement(const Node& n) const {
    if (n.kind == Node::Kind::kVariable && n.var == Var::kT && scope_.t_complement) {
      return {variable(n), *scope_.t_complement};
    }
    if (n.kind == Node::Kind::kBinary && n.op == '-' && n.args[0].kind == Node::Kind::kNumber &&
        n.args[0].value == 1.0) {
      const auto [v, c] = with_complement(n.args[1]);
      return {c, v};
    }
    const double v = eval(n);
    return {v, 1.0 - v};
  }

  double call(const Node& n) const {
    switch (n.func) {
      case Func::kSqrt: {
        const double a = eval(n.args[0]);
        if (a < 0.0) fault(n, "negative argument");
        return std::sqrt(a);
      }
      case Func::kExp: return std::exp(eval(n.args[0]));
      case Func::kLog: {
        const double a = eval(n.args[0]);
        if (!(a > 0.0)) fault(n, "non-positive argument");
        return std::log(a);
      }
      case Func::kAbs: return std::abs(eval(n.args[0]));
      case Func::kPow: return power(n, eval(n.args[0]), eval(n.args[1]));
      case Func::kSigma: {
        if (!green_) fault(n, "sigma is not available in this context");
        const auto [v, c] = with_complement(n.args[0]);
        if (v < 0.0 || v > 1.0) fault(n, "argument outside [0, 1]");
        return v <= 0.5 ? green_->sigma(v) : green_->sigma_complement(c);
      }
      case Func::kMl: {
        const double mu = eval(n.args[0]);
        const double nu = eval(n.args[1]);
        const double x = eval(n.args[2]);
        try {
          return mittag_leffler(MLIndex(mu, nu), x);
        } catch (const Error& e) {
          fault(n, e.what());
        }
      }
    }
    fault(n, "unknown function");
  }

  static double power(const Node& n, double a, double b) {
    if (a == 0.0 && b < 0.0) fault(n, "zero to a negative power");
    if (a < 0.0 && b != std::floor(b)) fault(n, "negative base with non-integer exponent");
    return std::pow(a, b);
  }

  double raw(const Node& n) const {
    switch (n.kind) {
      case Node::Kind::kNumber:
      case Node::Kind::kConstant:
        return n.value;
      case Node::Kind::kVariable:
        return variable(n);
      case Node::Kind::kNeg:
        return -eval(n.args[0]);
      case Node::Kind::kCall:
        return call(n);
      case Node::Kind::kBinary: {
        const double a = eval(n.args[0]);
        const double b = eval(n.args[1]);
        switch (n.op) {
          case '+': return a + b;
          case '-': return a - b;
          case '*': return a * b;
          case '/':
            if (b == 0.0) fault(n, "division by zero");
            return a / b;
          default: return power(n, a, b);
        }
      }
    }
    return 0.0;
  }

  const Scope& scope_;
  const GreenFunction* green_;
};

bool any_node(const Node& n, auto&& pred) {
  if (pred(n)) return true;
  for (const auto& a : n.args) {
    if (any_node(a, pred)) return true;
  }
  return false;
}

}  // namespace

ParseError::ParseError(const std::string& message, std::size_t offset,
                       std::vector<std::string> expected)
    : Error(message), offset_(offset), expected_(std::move(expected)) {}

Expression parse_expr(std::string_view src, const Constants& constants) {
  return Expression(Parser(src, constants).parse());
}

std::string to_string(const Node& n) {
  switch (n.kind) {
    case Node::Kind::kNumber: return number_text(n.value);
    case Node::Kind::kVariable:
    case Node::Kind::kConstant: return n.name;
    case Node::Kind::kNeg: return "(-" + to_string(n.args[0]) + ")";
    case Node::Kind::kBinary:
      return "(" + to_string(n.args[0]) + " " + n.op + " " + to_string(n.args[1]) + ")";
    case Node::Kind::kCall: {
      std::string out(func_name(n.func));
      out += "(";
      for (std::size_t i = 0; i < n.args.size(); ++i) out += (i ? ", " : "") + to_string(n.args[i]);
      return out + ")";
    }
  }
  return {};
}

double Expression::evaluate(const Scope& scope, const GreenFunction* green) const {
  return Evaluator(scope, green).eval(root_);
}

std::string Expression::to_string() const { return cli::to_string(root_); }

bool Expression::uses(Var v) const {
  return any_node(root_, [v](const Node& n) { return n.kind == Node::Kind::kVariable && n.var == v; });
}

bool Expression::uses_sigma() const {
  return any_node(root_, [](const Node& n) { return n.kind == Node::Kind::kCall && n.func == Func::kSigma; });
}

}  // namespace fbvp::cli
