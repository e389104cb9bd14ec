#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "mulgeo/error.hpp"
#include "mulgeo/mulcalc.hpp"
#include "oracles.hpp"
#include "property_suites.hpp"

using namespace mulgeo;
using oracle::throws_kind;

TEST_CASE("multiplicative derivatives", "[mulcalc]") {
  for (double x : {0.2, 1.0, 5.0}) {
    CHECK(mul_derivative(parse("3.7"), MulScalar(x)).value() == 1.0);
    CHECK(std::abs(mul_derivative(parse("t"), MulScalar(x)).log() - 1.0) <= 1e-15);
  }
  // e^{cos(log t)} at e^{π/2}: analytic log derivative −sin(π/2) = −1.
  const MulScalar x = MulScalar::from_log(M_PI / 2);
  CHECK(std::abs(mul_derivative(parse("exp(cos(log(t)))"), x).log() + 1.0) <= 1e-14);
  // Second derivative: −cos(π/2) = 0.
  CHECK(std::abs(mul_derivative(parse("exp(cos(log(t)))"), x, 2).log()) <= 1e-14);
  CHECK(throws_kind([] { mul_derivative(parse("t"), MulScalar(1.0), 0); }, ErrorKind::InvalidArgument));
  CHECK(throws_kind([] { mul_derivative(parse("log(t)"), MulScalar(1.0)); }, ErrorKind::EvalDomainError));
}

TEST_CASE("multiplicative finite differences", "[mulcalc]") {
  const auto id = [](double t) { return t; };
  const auto cosine = [](double t) { return std::exp(std::cos(std::log(t))); };
  const auto constant = [](double) { return 4.2; };
  CHECK(std::abs(mul_derivative_fd(id, MulScalar(3.3), 1e-4).log() - 1.0) <= 1e-8);
  CHECK(std::abs(mul_derivative_fd(cosine, MulScalar::from_log(M_PI / 2), 1e-4).log() + 1.0) <= 1e-7);
  CHECK(mul_derivative_fd(constant, MulScalar(0.4), 0.05).value() == 1.0);
  CHECK(throws_kind([&] { mul_derivative_fd(id, MulScalar(1.0), 0.0); }, ErrorKind::InvalidArgument));
  CHECK(throws_kind([&] { mul_derivative_fd(id, MulScalar(1.0), 0.2); }, ErrorKind::InvalidArgument));
}

TEST_CASE("multiplicative integrals", "[mulcalc]") {
  CHECK(mul_integral(parse("1"), MulScalar(0.5), MulScalar(4.0)).value() == 1.0);
  for (double s : {1.0, 2.0, 9.0}) {
    CHECK(std::abs(mul_integral(parse("e"), MulScalar(1.0), MulScalar(s)).log() - std::log(s)) <= 1e-12);
  }
  // ∫_0^1 u du = 1/2.
  CHECK(std::abs(mul_integral(parse("t"), MulScalar(1.0), MulScalar::one()).log() - 0.5) <= 1e-12);
  CHECK(throws_kind([] { mul_integral(parse("t"), MulScalar(2.0), MulScalar(1.0)); }, ErrorKind::InvalidArgument));
  CHECK(throws_kind([] { mul_integral(parse("1/sin(log(t))"), MulScalar(0.5), MulScalar(2.0)); },
                    ErrorKind::EvalDomainError));
}

TEST_CASE("adaptive Simpson", "[mulcalc]") {
  CHECK(std::abs(adaptive_simpson([](double u) { return std::sin(u); }, 0.0, M_PI) - 2.0) <= 1e-10);
  CHECK(std::abs(adaptive_simpson([](double u) { return std::exp(u); }, -1.0, 1.0, 1e-13) -
                 (std::exp(1.0) - std::exp(-1.0))) <= 1e-12);
  // A kink forces deep subdivision; a tiny budget must fail loudly.
  CHECK(throws_kind([] { adaptive_simpson([](double u) { return std::sqrt(std::abs(u)); }, -1.0, 2.0, 1e-14, 8); },
                    ErrorKind::QuadratureNonconvergence));
}

TEST_CASE("finite-difference jets", "[mulcalc]") {
  const auto g = [](double u) { return std::sin(u) + 0.5 * u * u; };
  const Series s = finite_difference_series(g, 0.4, 4, 1e-2);
  CHECK(std::abs(s.derivative_at(1) - (std::cos(0.4) + 0.4)) <= 1e-9);
  CHECK(std::abs(s.derivative_at(2) - (1.0 - std::sin(0.4))) <= 1e-8);
  CHECK(std::abs(s.derivative_at(3) + std::cos(0.4)) <= 1e-6);
  CHECK(std::abs(s.derivative_at(4) - std::sin(0.4)) <= 1e-5);
  CHECK(throws_kind([&] { finite_difference_series(g, 0.0, 5, 1e-2); }, ErrorKind::InvalidArgument));
}

TEST_CASE("jet derivative matches the log-conjugate oracle", "[mulcalc][property]") {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> at(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const oracle::TrigPoly p = oracle::random_scalar(rng);
    const ExprAst f = parse(p.expression());
    const double u = at(rng);
    const MulScalar x = MulScalar::from_log(u);
    INFO(p.expression() << " at u = " << u);
    REQUIRE(std::abs(mul_derivative(f, x).log() - p.derivative(u, 1)) <= 1e-10);
    REQUIRE(std::abs(mul_derivative(f, x, 3).log() - p.derivative(u, 3)) <= 1e-10);
    const double fd = mul_derivative_fd([&](double t) { return evaluate(f, t); }, x, 1e-4).log();
    REQUIRE(std::abs(fd - p.derivative(u, 1)) <= 1e-5);
  }
}

TEST_CASE("multiplicative Leibniz rule", "[mulcalc][property]") {
  const auto r = suites::leibniz(500);
  INFO("worst relative log error " << r.max_error);
  CHECK(r.cases == 500);
  CHECK(r.max_error <= 1e-10);
}

TEST_CASE("multiplicative chain rule and jet composition", "[mulcalc][property]") {
  const auto r = suites::chain(500);
  INFO("worst relative log error " << r.max_error);
  CHECK(r.cases == 500);
  CHECK(r.max_error <= 1e-10);
}

TEST_CASE("fundamental theorem of multiplicative calculus", "[mulcalc][property]") {
  const auto r = suites::fundamental_theorem(500);
  INFO("worst relative log error " << r.max_error);
  CHECK(r.cases == 500);
  CHECK(r.max_error <= 1e-8);
}

TEST_CASE("finite differences converge to the jet at second order", "[mulcalc][property]") {
  const auto r = suites::fd_convergence(200);
  INFO("ratios in [" << r.min_ratio << ", " << r.max_ratio << "]");
  CHECK(r.cases == 200);
  CHECK(r.min_ratio >= 3.0);
  CHECK(r.max_ratio <= 5.0);
}
