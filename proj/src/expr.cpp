#include "mulgeo/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <string>

#include "mulgeo/error.hpp"

namespace mulgeo {

struct ExprAst::Node {
  NodeKind kind = NodeKind::Constant;
  double value = 0.0;
  std::string symbol;
  BinaryOp op = BinaryOp::Add;
  Function fn = Function::Exp;
  std::array<std::shared_ptr<const Node>, 2> children{};
};

namespace {

struct FunctionName {
  std::string_view name;
  Function fn;
};

constexpr std::array<FunctionName, 7> kFunctions{{
    {"exp", Function::Exp},
    {"log", Function::Log},
    {"sin", Function::Sin},
    {"cos", Function::Cos},
    {"tan", Function::Tan},
    {"sec", Function::Sec},
    {"sqrt", Function::Sqrt},
}};

std::optional<Function> lookup_function(std::string_view name) {
  for (const auto& f : kFunctions)
    if (f.name == name) return f.fn;
  return std::nullopt;
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

const char* to_string(Function fn) noexcept {
  for (const auto& f : kFunctions)
    if (f.fn == fn) return f.name.data();
  return "?";
}

// ---------------------------------------------------------------------------
// Lexer

std::vector<Token> tokenize(std::string_view source) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = source.size();
  while (i < n) {
    const char c = source[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (is_digit(c) || (c == '.' && i + 1 < n && is_digit(source[i + 1]))) {
      while (i < n && is_digit(source[i])) ++i;
      if (i < n && source[i] == '.') {
        ++i;
        while (i < n && is_digit(source[i])) ++i;
      }
      if (i < n && (source[i] == 'e' || source[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < n && (source[j] == '+' || source[j] == '-')) ++j;
        if (j < n && is_digit(source[j])) {
          i = j;
          while (i < n && is_digit(source[i])) ++i;
        }
      }
      tokens.push_back({TokenKind::Number, std::string(source.substr(start, i - start)), start});
    } else if (is_ident_start(c)) {
      while (i < n && is_ident_char(source[i])) ++i;
      tokens.push_back({TokenKind::Identifier, std::string(source.substr(start, i - start)), start});
    } else if (c == '+' || c == '-' || c == '*' || c == '/' || c == '^') {
      tokens.push_back({TokenKind::Operator, std::string(1, c), start});
      ++i;
    } else if (c == '(') {
      tokens.push_back({TokenKind::LParen, "(", start});
      ++i;
    } else if (c == ')') {
      tokens.push_back({TokenKind::RParen, ")", start});
      ++i;
    } else if (c == ',') {
      tokens.push_back({TokenKind::Comma, ",", start});
      ++i;
    } else {
      throw Error(ErrorKind::LexError,
                  "illegal character '" + std::string(1, c) + "' at offset " + std::to_string(start),
                  start);
    }
  }
  return tokens;
}

// ---------------------------------------------------------------------------
// AST handles

ExprAst ExprAst::constant(double value, std::string symbol) {
  auto node = std::make_shared<Node>();
  node->kind = NodeKind::Constant;
  node->value = value;
  node->symbol = std::move(symbol);
  return ExprAst(std::move(node));
}

ExprAst ExprAst::variable() {
  auto node = std::make_shared<Node>();
  node->kind = NodeKind::Variable;
  return ExprAst(std::move(node));
}

ExprAst ExprAst::negate(ExprAst operand) {
  auto node = std::make_shared<Node>();
  node->kind = NodeKind::Negate;
  node->children[0] = std::move(operand.node_);
  return ExprAst(std::move(node));
}

ExprAst ExprAst::binary(BinaryOp op, ExprAst lhs, ExprAst rhs) {
  auto node = std::make_shared<Node>();
  node->kind = NodeKind::Binary;
  node->op = op;
  node->children[0] = std::move(lhs.node_);
  node->children[1] = std::move(rhs.node_);
  return ExprAst(std::move(node));
}

ExprAst ExprAst::call(Function fn, ExprAst argument) {
  auto node = std::make_shared<Node>();
  node->kind = NodeKind::Call;
  node->fn = fn;
  node->children[0] = std::move(argument.node_);
  return ExprAst(std::move(node));
}

NodeKind ExprAst::kind() const noexcept { return node_->kind; }
double ExprAst::value() const noexcept { return node_->value; }
const std::string& ExprAst::symbol() const noexcept { return node_->symbol; }
BinaryOp ExprAst::op() const noexcept { return node_->op; }
Function ExprAst::function() const noexcept { return node_->fn; }

ExprAst ExprAst::child(std::size_t i) const {
  if (i >= 2 || !node_->children[i]) {
    throw Error(ErrorKind::InvalidArgument, "expression node has no child " + std::to_string(i));
  }
  return ExprAst(node_->children[i]);
}

bool operator==(const ExprAst& a, const ExprAst& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case NodeKind::Constant: return a.value() == b.value() && a.symbol() == b.symbol();
    case NodeKind::Variable: return true;
    case NodeKind::Negate: return a.child(0) == b.child(0);
    case NodeKind::Binary:
      return a.op() == b.op() && a.child(0) == b.child(0) && a.child(1) == b.child(1);
    case NodeKind::Call: return a.function() == b.function() && a.child(0) == b.child(0);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(const std::vector<Token>& tokens) : tokens_(tokens) {
    end_ = tokens.empty() ? 0 : tokens.back().position + tokens.back().text.size();
  }

  ExprAst parse_all() {
    if (tokens_.empty()) fail("expression", "empty expression");
    ExprAst e = parse_expr();
    if (pos_ != tokens_.size()) fail("operator or end of input", "unexpected '" + peek()->text + "'");
    return e;
  }

 private:
  const Token* peek() const { return pos_ < tokens_.size() ? &tokens_[pos_] : nullptr; }

  std::size_t here() const { return pos_ < tokens_.size() ? tokens_[pos_].position : end_; }

  bool at_operator(char op) const {
    const Token* t = peek();
    return t && t->kind == TokenKind::Operator && t->text[0] == op;
  }

  [[noreturn]] void fail(const std::string& expected, const std::string& what) const {
    const std::size_t at = here();
    throw Error(ErrorKind::ParseError,
                what + " at offset " + std::to_string(at) + ", expected " + expected, at, expected);
  }

  ExprAst parse_expr() {
    ExprAst lhs = parse_term();
    while (at_operator('+') || at_operator('-')) {
      const BinaryOp op = peek()->text[0] == '+' ? BinaryOp::Add : BinaryOp::Sub;
      ++pos_;
      lhs = ExprAst::binary(op, lhs, parse_term());
    }
    return lhs;
  }

  ExprAst parse_term() {
    ExprAst lhs = parse_factor();
    while (at_operator('*') || at_operator('/')) {
      const BinaryOp op = peek()->text[0] == '*' ? BinaryOp::Mul : BinaryOp::Div;
      ++pos_;
      lhs = ExprAst::binary(op, lhs, parse_factor());
    }
    return lhs;
  }

  ExprAst parse_factor() {
    if (at_operator('-')) {
      ++pos_;
      return ExprAst::negate(parse_factor());
    }
    return parse_power();
  }

  ExprAst parse_power() {
    ExprAst base = parse_atom();
    if (at_operator('^')) {
      ++pos_;
      return ExprAst::binary(BinaryOp::Pow, base, parse_factor());
    }
    return base;
  }

  void expect(TokenKind kind, const char* text) {
    const Token* t = peek();
    if (!t || t->kind != kind) fail(std::string("'") + text + "'", t ? "unexpected '" + t->text + "'" : "unexpected end of input");
    ++pos_;
  }

  ExprAst parse_atom() {
    const Token* t = peek();
    if (!t) fail("number, identifier or '('", "unexpected end of input");
    switch (t->kind) {
      case TokenKind::Number: {
        double v = 0.0;
        const char* first = t->text.data();
        const char* last = first + t->text.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last || !std::isfinite(v)) fail("finite number", "malformed number '" + t->text + "'");
        ++pos_;
        return ExprAst::constant(v);
      }
      case TokenKind::Identifier: {
        const std::string name = t->text;
        const std::size_t at = t->position;
        ++pos_;
        const Token* next = peek();
        const bool called = next && next->kind == TokenKind::LParen;
        if (auto fn = lookup_function(name)) {
          if (!called) fail("'(' after function name", "function '" + name + "' without argument list");
          ++pos_;
          ExprAst arg = parse_expr();
          expect(TokenKind::RParen, ")");
          return ExprAst::call(*fn, arg);
        }
        if (called) {
          throw Error(ErrorKind::UnknownFunction,
                      "unknown function '" + name + "' at offset " + std::to_string(at), at,
                      "one of exp, log, sin, cos, tan, sec, sqrt");
        }
        if (name == "t") return ExprAst::variable();
        if (name == "e") return ExprAst::constant(std::numbers::e, "e");
        if (name == "pi") return ExprAst::constant(std::numbers::pi, "pi");
        throw Error(ErrorKind::UnknownIdentifier,
                    "unknown identifier '" + name + "' at offset " + std::to_string(at), at,
                    "t, e or pi");
      }
      case TokenKind::LParen: {
        ++pos_;
        ExprAst inner = parse_expr();
        expect(TokenKind::RParen, ")");
        return inner;
      }
      default: fail("number, identifier or '('", "unexpected '" + t->text + "'");
    }
  }

  const std::vector<Token>& tokens_;
  std::size_t pos_ = 0;
  std::size_t end_ = 0;
};

}  // namespace

ExprAst parse(const std::vector<Token>& tokens) { return Parser(tokens).parse_all(); }

ExprAst parse(std::string_view source) { return parse(tokenize(source)); }

// ---------------------------------------------------------------------------
// Printing

namespace {

void print(const ExprAst& ast, std::string& out) {
  switch (ast.kind()) {
    case NodeKind::Constant: {
      if (!ast.symbol().empty()) {
        out += ast.symbol();
      } else {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", ast.value());
        out += buf;
      }
      return;
    }
    case NodeKind::Variable: out += 't'; return;
    case NodeKind::Negate:
      out += "(-";
      print(ast.child(0), out);
      out += ')';
      return;
    case NodeKind::Binary: {
      static constexpr const char* kOps[] = {" + ", " - ", " * ", " / ", " ^ "};
      out += '(';
      print(ast.child(0), out);
      out += kOps[static_cast<int>(ast.op())];
      print(ast.child(1), out);
      out += ')';
      return;
    }
    case NodeKind::Call:
      out += to_string(ast.function());
      out += '(';
      print(ast.child(0), out);
      out += ')';
      return;
  }
}

}  // namespace

std::string pretty_print(const ExprAst& ast) {
  std::string out;
  print(ast, out);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

[[noreturn]] void domain_fail(const char* what, double x) {
  throw Error(ErrorKind::EvalDomainError,
              std::string(what) + " undefined at argument " + std::to_string(x));
}

double finite_or_throw(double v, const char* what) {
  if (std::isnan(v)) domain_fail(what, v);
  if (!std::isfinite(v)) throw Error(ErrorKind::EvalOverflow, std::string(what) + " overflowed");
  return v;
}

double eval_node(const ExprAst& ast, double t) {
  switch (ast.kind()) {
    case NodeKind::Constant: return ast.value();
    case NodeKind::Variable: return t;
    case NodeKind::Negate: return -eval_node(ast.child(0), t);
    case NodeKind::Binary: {
      const double a = eval_node(ast.child(0), t);
      const double b = eval_node(ast.child(1), t);
      switch (ast.op()) {
        case BinaryOp::Add: return finite_or_throw(a + b, "+");
        case BinaryOp::Sub: return finite_or_throw(a - b, "-");
        case BinaryOp::Mul: return finite_or_throw(a * b, "*");
        case BinaryOp::Div:
          if (b == 0.0) domain_fail("division", b);
          return finite_or_throw(a / b, "/");
        case BinaryOp::Pow:
          if (a < 0.0 && b != std::round(b)) domain_fail("non-integer power of a negative base", a);
          if (a == 0.0 && b < 0.0) domain_fail("negative power of zero", a);
          return finite_or_throw(std::pow(a, b), "^");
      }
      break;
    }
    case NodeKind::Call: {
      const double x = eval_node(ast.child(0), t);
      switch (ast.function()) {
        case Function::Exp: return finite_or_throw(std::exp(x), "exp");
        case Function::Log:
          if (!(x > 0.0)) domain_fail("log", x);
          return std::log(x);
        case Function::Sin: return std::sin(x);
        case Function::Cos: return std::cos(x);
        case Function::Tan:
          if (std::abs(std::cos(x)) < 1e-15) domain_fail("tan", x);
          return finite_or_throw(std::tan(x), "tan");
        case Function::Sec:
          if (std::abs(std::cos(x)) < 1e-15) domain_fail("sec", x);
          return finite_or_throw(1.0 / std::cos(x), "sec");
        case Function::Sqrt:
          if (x < 0.0) domain_fail("sqrt", x);
          return std::sqrt(x);
      }
      break;
    }
  }
  throw Error(ErrorKind::InvalidArgument, "malformed expression node");
}

Series series_node(const ExprAst& ast, const Series& t) {
  switch (ast.kind()) {
    case NodeKind::Constant: return Series(t.order(), ast.value());
    case NodeKind::Variable: return t;
    case NodeKind::Negate: return -series_node(ast.child(0), t);
    case NodeKind::Binary: {
      const Series a = series_node(ast.child(0), t);
      const Series b = series_node(ast.child(1), t);
      switch (ast.op()) {
        case BinaryOp::Add: return a + b;
        case BinaryOp::Sub: return a - b;
        case BinaryOp::Mul: return a * b;
        case BinaryOp::Div: return a / b;
        case BinaryOp::Pow: return pow(a, b);
      }
      break;
    }
    case NodeKind::Call: {
      const Series x = series_node(ast.child(0), t);
      switch (ast.function()) {
        case Function::Exp: return exp(x);
        case Function::Log: return log(x);
        case Function::Sin: return sin(x);
        case Function::Cos: return cos(x);
        case Function::Tan: return tan(x);
        case Function::Sec: return sec(x);
        case Function::Sqrt: return sqrt(x);
      }
      break;
    }
  }
  throw Error(ErrorKind::InvalidArgument, "malformed expression node");
}

}  // namespace

double evaluate(const ExprAst& ast, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) domain_fail("expression (t must be positive)", t);
  return eval_node(ast, t);
}

Series evaluate_series(const ExprAst& ast, const Series& t) { return series_node(ast, t); }

LogJet evaluate_jet(const ExprAst& ast, double u0, int order) {
  if (order < 1 || order > 6) {
    throw Error(ErrorKind::InvalidArgument, "jet order must lie in [1, 6], got " + std::to_string(order));
  }
  const Series t = exp(Series::variable(order, u0));
  const Series f = series_node(ast, t);
  if (!(f[0] > 0.0)) domain_fail("log of expression value (must be positive)", f[0]);
  LogJet jet{u0, log(f)};
  for (int k = 0; k <= order; ++k) {
    if (!std::isfinite(jet.coeffs[k])) {
      throw Error(ErrorKind::EvalOverflow, "jet coefficient " + std::to_string(k) + " is not finite");
    }
  }
  return jet;
}

ExprAst substitute(const ExprAst& f, const ExprAst& g) {
  switch (f.kind()) {
    case NodeKind::Constant: return f;
    case NodeKind::Variable: return g;
    case NodeKind::Negate: return ExprAst::negate(substitute(f.child(0), g));
    case NodeKind::Binary:
      return ExprAst::binary(f.op(), substitute(f.child(0), g), substitute(f.child(1), g));
    case NodeKind::Call: return ExprAst::call(f.function(), substitute(f.child(0), g));
  }
  return f;
}

}  // namespace mulgeo
