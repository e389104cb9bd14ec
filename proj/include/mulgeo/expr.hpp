#pragma once

// A one-variable expression language for curve components, e.g.
//   exp(sec(log(t))*cos(log(t^sqrt(2)))/sqrt(2))
//
// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | power
//   power  := atom ('^' factor)?
//   atom   := number | 'e' | 'pi' | 't' | fn '(' expr ')' | '(' expr ')'
//   fn     := exp | log | sin | cos | tan | sec | sqrt

#include <array>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "mulgeo/series.hpp"

namespace mulgeo {

enum class TokenKind { Number, Identifier, Operator, LParen, RParen, Comma };

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t position;  // byte offset into the source

  bool operator==(const Token&) const = default;
};

/// Splits source into tokens, skipping whitespace. Throws LexError carrying
/// the offset of the first illegal character.
std::vector<Token> tokenize(std::string_view source);

enum class NodeKind { Constant, Variable, Negate, Binary, Call };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class Function { Exp, Log, Sin, Cos, Tan, Sec, Sqrt };

const char* to_string(Function fn) noexcept;

/// Immutable expression tree. Copies share structure, so an ExprAst is cheap
/// to pass by value and safe to read from many threads.
class ExprAst {
 public:
  /// `symbol` names a constant ("e", "pi") for printing; empty for literals.
  static ExprAst constant(double value, std::string symbol = {});
  static ExprAst variable();
  static ExprAst negate(ExprAst operand);
  static ExprAst binary(BinaryOp op, ExprAst lhs, ExprAst rhs);
  static ExprAst call(Function fn, ExprAst argument);

  NodeKind kind() const noexcept;
  /// Constant value; only meaningful for NodeKind::Constant.
  double value() const noexcept;
  const std::string& symbol() const noexcept;
  BinaryOp op() const noexcept;
  Function function() const noexcept;
  /// Operand(s): one for Negate and Call, two for Binary.
  ExprAst child(std::size_t i) const;

  /// Structural equality.
  friend bool operator==(const ExprAst& a, const ExprAst& b);

 private:
  struct Node;
  explicit ExprAst(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Parses a token stream. Throws ParseError (with the expected token
/// description), UnknownFunction, or UnknownIdentifier.
ExprAst parse(const std::vector<Token>& tokens);
/// tokenize + parse.
ExprAst parse(std::string_view source);

/// Fully parenthesized source text that parses back to the same tree.
std::string pretty_print(const ExprAst& ast);

/// Classical value at t > 0. Throws EvalDomainError or EvalOverflow.
double evaluate(const ExprAst& ast, double t);

/// Evaluates the expression over truncated Taylor series with t given as a
/// series.
Series evaluate_series(const ExprAst& ast, const Series& t);

/// Taylor coefficients through `order` (1..6) of u -> log(ast(e^u)) at u0.
LogJet evaluate_jet(const ExprAst& ast, double u0, int order);

/// f(g(t)): every occurrence of t in f replaced by g.
ExprAst substitute(const ExprAst& f, const ExprAst& g);

}  // namespace mulgeo
