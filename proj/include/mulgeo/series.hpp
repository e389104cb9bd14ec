#pragma once

// Truncated Taylor series c0 + c1 w + ... + cK w^K about a fixed base point.
// This is the forward-mode derivative engine behind every multiplicative
// derivative in the library.

#include <array>
#include <cstddef>

namespace mulgeo {

class Series {
 public:
  static constexpr int kMaxOrder = 8;

  Series() = default;
  /// A constant series of the given order.
  Series(int order, double constant);

  /// The identity w (coefficients 0, 1, 0, ...) plus an offset.
  static Series variable(int order, double offset = 0.0);

  int order() const noexcept { return order_; }
  double operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  double& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }

  /// k-th derivative of the represented function at the base point (c_k k!).
  double derivative_at(int k) const;

  /// d/dw, one order lower.
  Series derivative() const;
  /// Antiderivative with zero constant term, one order higher (capped).
  Series integral() const;
  /// Same coefficients, truncated to a lower order.
  Series truncated(int order) const;

  /// outer(inner(w)) for an inner series with zero constant term.
  Series compose(const Series& inner) const;
  /// Compositional inverse of a series with c0 = 0 and c1 != 0.
  /// Throws JetSingularity when c1 = 0.
  Series revert() const;

  Series& operator+=(const Series& rhs);
  Series& operator-=(const Series& rhs);
  Series& operator*=(double k);

 private:
  int order_ = 0;
  std::array<double, kMaxOrder + 1> c_{};
};

Series operator+(const Series& a, const Series& b);
Series operator-(const Series& a, const Series& b);
Series operator-(const Series& a);
Series operator*(const Series& a, const Series& b);
/// Throws JetSingularity when b has a zero constant term.
Series operator/(const Series& a, const Series& b);
Series operator+(const Series& a, double k);
Series operator*(double k, const Series& a);
Series operator*(const Series& a, double k);

// Elementary functions. Domain violations throw EvalDomainError; a vanishing
// leading coefficient where a root or reciprocal is needed throws JetSingularity.
Series exp(const Series& a);
Series log(const Series& a);
Series sin(const Series& a);
Series cos(const Series& a);
Series tan(const Series& a);
Series sec(const Series& a);
Series sqrt(const Series& a);
/// a^p for a constant exponent; integer p permits a non-positive base.
Series pow(const Series& a, double p);
/// a^b = exp(b log a); requires a positive base.
Series pow(const Series& a, const Series& b);

/// Taylor coefficients of u -> log f(e^u) about u0: the quantity every
/// multiplicative derivative of f is read from.
struct LogJet {
  double u0 = 0.0;
  Series coeffs;

  int order() const noexcept { return coeffs.order(); }
  /// n-th classical derivative of log f(e^u) at u0, i.e. log f^{*(n)}(e^{u0}).
  double log_derivative(int n) const { return coeffs.derivative_at(n); }
};

}  // namespace mulgeo
