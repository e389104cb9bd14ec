#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "mulgeo/error.hpp"
#include "mulgeo/expr.hpp"
#include "oracles.hpp"

using namespace mulgeo;
using Catch::Approx;
using oracle::throws_kind;

TEST_CASE("tokenizer", "[expr]") {
  const auto toks = tokenize("exp(cos(log(t)))");
  // exp ( cos ( log ( t ) ) )
  REQUIRE(toks.size() == 10);
  CHECK(toks[9].kind == TokenKind::RParen);
  CHECK(toks[8].kind == TokenKind::RParen);
  CHECK(toks[7].kind == TokenKind::RParen);
  for (std::size_t i = 1; i < toks.size(); ++i) CHECK(toks[i].position > toks[i - 1].position);

  const auto pw = tokenize("2^0.5");
  REQUIRE(pw.size() == 3);
  CHECK(pw[0] == Token{TokenKind::Number, "2", 0});
  CHECK(pw[1] == Token{TokenKind::Operator, "^", 1});
  CHECK(pw[2] == Token{TokenKind::Number, "0.5", 2});

  CHECK(tokenize(" 1.5e-3 * t ").size() == 3);
  CHECK(tokenize("a,b")[1].kind == TokenKind::Comma);

  try {
    tokenize("e@t");
    FAIL("expected a lex error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::LexError);
    CHECK(e.position() == std::size_t{1});
  }
}

TEST_CASE("parser precedence and constants", "[expr]") {
  for (double t : {0.5, 1.0, 7.0}) CHECK(evaluate(parse("1+2*3"), t) == 7.0);
  CHECK(evaluate(parse("2^3^2"), 1.0) == 512.0);
  CHECK(evaluate(parse("-2^2"), 1.0) == -4.0);
  CHECK(evaluate(parse("2*-3"), 1.0) == -6.0);
  CHECK(evaluate(parse("8/2/2"), 1.0) == 2.0);
  CHECK(evaluate(parse("10-2-3"), 1.0) == 5.0);
  CHECK(evaluate(parse("exp(cos(log(t)))"), 1.0) == Approx(std::exp(1.0)).epsilon(1e-15));
  CHECK(evaluate(parse("sec(log(t))/sqrt(2)"), 1.0) == Approx(0.70710678118654752).epsilon(1e-15));
  CHECK(evaluate(parse("pi"), 3.0) == Approx(M_PI).epsilon(1e-15));
  CHECK(evaluate(parse("3.5"), 9.0) == 3.5);
  CHECK(evaluate(parse("t^2"), std::exp(1.0)) == Approx(std::exp(2.0)).epsilon(1e-15));
  CHECK(evaluate(parse("exp(sec(log(t))/sqrt(2))"), 1.0) == Approx(2.0281149816474726).epsilon(1e-15));
}

TEST_CASE("parse errors", "[expr]") {
  CHECK(throws_kind([] { parse("foo(t)"); }, ErrorKind::UnknownFunction));
  CHECK(throws_kind([] { parse("x + 1"); }, ErrorKind::UnknownIdentifier));
  CHECK(throws_kind([] { parse(""); }, ErrorKind::ParseError));
  CHECK(throws_kind([] { parse("1 2"); }, ErrorKind::ParseError));
  try {
    parse("(1+t");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    CHECK(e.position() == std::size_t{4});
    CHECK(e.expected() == "')'");
  }
}

TEST_CASE("evaluation errors", "[expr]") {
  CHECK(throws_kind([] { evaluate(parse("log(0-1)"), 1.0); }, ErrorKind::EvalDomainError));
  CHECK(throws_kind([] { evaluate(parse("sqrt(0-t)"), 1.0); }, ErrorKind::EvalDomainError));
  CHECK(throws_kind([] { evaluate(parse("1/(t-1)"), 1.0); }, ErrorKind::EvalDomainError));
  CHECK(throws_kind([] { evaluate(parse("exp(1000)"), 1.0); }, ErrorKind::EvalOverflow));
  CHECK(throws_kind([] { evaluate(parse("t"), 0.0); }, ErrorKind::EvalDomainError));
}

TEST_CASE("log jets", "[expr]") {
  const LogJet c = evaluate_jet(parse("exp(cos(log(t)))"), 0.0, 2);
  CHECK(c.coeffs[0] == Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(c.coeffs[1]) <= 1e-15);
  CHECK(c.coeffs[2] == Approx(-0.5).epsilon(1e-15));

  const LogJet k = evaluate_jet(parse("5"), 0.7, 3);
  CHECK(k.coeffs[0] == Approx(std::log(5.0)).epsilon(1e-15));
  for (int i = 1; i <= 3; ++i) CHECK(k.coeffs[i] == 0.0);

  // log(exp(t)) = e^u: coefficients e, e, e/2, checked against central
  // differences of the host function.
  const LogJet x = evaluate_jet(parse("exp(t)"), 1.0, 3);
  const auto g = [](double u) { return std::exp(u); };
  const double h = 1e-4;
  CHECK(x.coeffs[0] == Approx(std::exp(1.0)).epsilon(1e-15));
  CHECK(std::abs(x.coeffs[1] - (g(1 + h) - g(1 - h)) / (2 * h)) <= 1e-7);
  CHECK(std::abs(x.coeffs[2] - (g(1 + h) - 2 * g(1) + g(1 - h)) / (2 * h * h)) <= 1e-6);

  CHECK(throws_kind([] { evaluate_jet(parse("t"), 0.0, 7); }, ErrorKind::InvalidArgument));
  CHECK(throws_kind([] { evaluate_jet(parse("t"), 0.0, 0); }, ErrorKind::InvalidArgument));
  CHECK(throws_kind([] { evaluate_jet(parse("sin(log(t))"), 0.0, 2); }, ErrorKind::EvalDomainError));
}

TEST_CASE("pretty print round trips random trees", "[expr][property]") {
  std::mt19937_64 rng(41);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    const std::string src = oracle::random_source(rng, 6);
    const ExprAst ast = parse(src);
    const std::string printed = pretty_print(ast);
    INFO(src << "  =>  " << printed);
    REQUIRE(parse(printed) == ast);
    ++checked;
  }
  CHECK(checked == 200);
  CHECK_FALSE(parse("t+1") == parse("1+t"));
}

TEST_CASE("jet coefficients match the function and its finite differences", "[expr][property]") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> at(-1.5, 1.5);
  const double h = 1e-3;
  for (int i = 0; i < 200; ++i) {
    const std::string src = oracle::random_smooth_positive(rng, 3);
    const ExprAst f = parse(src);
    const double u = at(rng);
    const auto g = [&](double v) { return std::log(evaluate(f, std::exp(v))); };
    const LogJet jet = evaluate_jet(f, u, 3);
    INFO(src << " at u = " << u);
    REQUIRE(std::abs(jet.coeffs[0] - g(u)) <= 1e-12 * std::max(1.0, std::abs(g(u))));
    const double d1 = (g(u + h) - g(u - h)) / (2 * h);
    const double d2 = (g(u + h) - 2 * g(u) + g(u - h)) / (h * h);
    const double d3 = (g(u + 2 * h) - 2 * g(u + h) + 2 * g(u - h) - g(u - 2 * h)) / (2 * h * h * h);
    REQUIRE(std::abs(jet.log_derivative(1) - d1) <= 1e-5);
    REQUIRE(std::abs(jet.log_derivative(2) - d2) <= 1e-5);
    REQUIRE(std::abs(jet.log_derivative(3) - d3) <= 1e-5);
  }
}

TEST_CASE("substitution composes expressions", "[expr]") {
  const ExprAst f = parse("sin(t)+t^2");
  const ExprAst g = parse("exp(t)");
  const ExprAst h = substitute(f, g);
  for (double t : {0.3, 1.0, 2.0}) {
    CHECK(evaluate(h, t) == Approx(std::sin(std::exp(t)) + std::exp(2 * t)).epsilon(1e-14));
  }
  CHECK(substitute(parse("2"), g) == parse("2"));
}
