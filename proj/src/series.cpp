#include "mulgeo/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mulgeo/error.hpp"

namespace mulgeo {
namespace {

int check_order(int order) {
  if (order < 0 || order > Series::kMaxOrder) {
    throw Error(ErrorKind::InvalidArgument,
                "series order " + std::to_string(order) + " outside [0, " +
                    std::to_string(Series::kMaxOrder) + "]");
  }
  return order;
}

[[noreturn]] void singular(const char* what) {
  throw Error(ErrorKind::JetSingularity, std::string(what) + ": vanishing leading coefficient");
}

[[noreturn]] void out_of_domain(const char* what, double value) {
  throw Error(ErrorKind::EvalDomainError,
              std::string(what) + ": argument " + std::to_string(value) + " outside the domain");
}

bool is_constant(const Series& a) {
  for (int k = 1; k <= a.order(); ++k)
    if (a[k] != 0.0) return false;
  return true;
}

// Joint recurrence for sin and cos of a series.
void sin_cos(const Series& a, Series& s, Series& c) {
  const int n = a.order();
  s = Series(n, std::sin(a[0]));
  c = Series(n, std::cos(a[0]));
  for (int k = 1; k <= n; ++k) {
    double ds = 0.0;
    double dc = 0.0;
    for (int j = 1; j <= k; ++j) {
      ds += j * a[j] * c[k - j];
      dc -= j * a[j] * s[k - j];
    }
    s[k] = ds / k;
    c[k] = dc / k;
  }
}

}  // namespace

Series::Series(int order, double constant) : order_(check_order(order)) { c_[0] = constant; }

Series Series::variable(int order, double offset) {
  Series s(order, offset);
  if (order >= 1) s.c_[1] = 1.0;
  return s;
}

double Series::derivative_at(int k) const {
  if (k < 0 || k > order_) {
    throw Error(ErrorKind::InvalidArgument,
                "derivative " + std::to_string(k) + " exceeds series order " + std::to_string(order_));
  }
  double factorial = 1.0;
  for (int j = 2; j <= k; ++j) factorial *= j;
  return c_[static_cast<std::size_t>(k)] * factorial;
}

Series Series::derivative() const {
  if (order_ == 0) throw Error(ErrorKind::InvalidArgument, "cannot differentiate an order-0 series");
  Series d(order_ - 1, 0.0);
  for (int k = 0; k < order_; ++k) d.c_[k] = (k + 1) * c_[k + 1];
  return d;
}

Series Series::integral() const {
  Series s(std::min(order_ + 1, kMaxOrder), 0.0);
  for (int k = 1; k <= s.order_; ++k) s.c_[k] = c_[k - 1] / k;
  return s;
}

Series Series::truncated(int order) const {
  Series s(std::min(check_order(order), order_), 0.0);
  for (int k = 0; k <= s.order_; ++k) s.c_[k] = c_[k];
  return s;
}

Series Series::compose(const Series& inner) const {
  const int n = std::min(order_, inner.order_);
  Series w = inner.truncated(n);
  w.c_[0] = 0.0;
  Series acc(n, c_[n]);
  for (int k = n - 1; k >= 0; --k) acc = acc * w + c_[k];
  return acc;
}

Series Series::revert() const {
  if (order_ < 1 || c_[1] == 0.0) singular("series reversion");
  Series a = *this;
  a.c_[0] = 0.0;
  const Series delta = variable(order_);
  const double inv = 1.0 / c_[1];
  Series w = inv * delta;
  // Each pass fixes one more coefficient of the inverse.
  for (int pass = 1; pass < order_; ++pass) {
    Series higher = a.compose(w) - c_[1] * w;
    w = inv * (delta - higher);
  }
  return w;
}

Series& Series::operator+=(const Series& rhs) {
  order_ = std::min(order_, rhs.order_);
  for (int k = 0; k <= order_; ++k) c_[k] += rhs.c_[k];
  for (int k = order_ + 1; k <= kMaxOrder; ++k) c_[k] = 0.0;
  return *this;
}

Series& Series::operator-=(const Series& rhs) {
  order_ = std::min(order_, rhs.order_);
  for (int k = 0; k <= order_; ++k) c_[k] -= rhs.c_[k];
  for (int k = order_ + 1; k <= kMaxOrder; ++k) c_[k] = 0.0;
  return *this;
}

Series& Series::operator*=(double k) {
  for (int j = 0; j <= order_; ++j) c_[j] *= k;
  return *this;
}

Series operator+(const Series& a, const Series& b) {
  Series r = a;
  r += b;
  return r;
}

Series operator-(const Series& a, const Series& b) {
  Series r = a;
  r -= b;
  return r;
}

Series operator-(const Series& a) { return -1.0 * a; }

Series operator*(const Series& a, const Series& b) {
  const int n = std::min(a.order(), b.order());
  Series r(n, 0.0);
  for (int k = 0; k <= n; ++k) {
    double acc = 0.0;
    for (int j = 0; j <= k; ++j) acc += a[j] * b[k - j];
    r[k] = acc;
  }
  return r;
}

Series operator/(const Series& a, const Series& b) {
  if (b[0] == 0.0) singular("series division");
  const int n = std::min(a.order(), b.order());
  Series q(n, 0.0);
  for (int k = 0; k <= n; ++k) {
    double acc = a[k];
    for (int j = 1; j <= k; ++j) acc -= b[j] * q[k - j];
    q[k] = acc / b[0];
  }
  return q;
}

Series operator+(const Series& a, double k) {
  Series r = a;
  r[0] += k;
  return r;
}

Series operator*(double k, const Series& a) {
  Series r = a;
  r *= k;
  return r;
}

Series operator*(const Series& a, double k) { return k * a; }

Series exp(const Series& a) {
  const int n = a.order();
  Series b(n, std::exp(a[0]));
  for (int k = 1; k <= n; ++k) {
    double acc = 0.0;
    for (int j = 1; j <= k; ++j) acc += j * a[j] * b[k - j];
    b[k] = acc / k;
  }
  return b;
}

Series log(const Series& a) {
  if (!(a[0] > 0.0)) out_of_domain("log", a[0]);
  const int n = a.order();
  Series b(n, std::log(a[0]));
  for (int k = 1; k <= n; ++k) {
    double acc = 0.0;
    for (int j = 1; j < k; ++j) acc += j * b[j] * a[k - j];
    b[k] = (a[k] - acc / k) / a[0];
  }
  return b;
}

Series sin(const Series& a) {
  Series s, c;
  sin_cos(a, s, c);
  return s;
}

Series cos(const Series& a) {
  Series s, c;
  sin_cos(a, s, c);
  return c;
}

Series tan(const Series& a) {
  Series s, c;
  sin_cos(a, s, c);
  if (std::abs(c[0]) < 1e-15) out_of_domain("tan", a[0]);
  return s / c;
}

Series sec(const Series& a) {
  Series s, c;
  sin_cos(a, s, c);
  if (std::abs(c[0]) < 1e-15) out_of_domain("sec", a[0]);
  return Series(a.order(), 1.0) / c;
}

Series sqrt(const Series& a) {
  if (a[0] < 0.0) out_of_domain("sqrt", a[0]);
  const int n = a.order();
  if (a[0] == 0.0) {
    if (n == 0) return Series(0, 0.0);
    singular("sqrt");
  }
  Series r(n, std::sqrt(a[0]));
  for (int k = 1; k <= n; ++k) {
    double acc = a[k];
    for (int j = 1; j < k; ++j) acc -= r[j] * r[k - j];
    r[k] = acc / (2.0 * r[0]);
  }
  return r;
}

Series pow(const Series& a, double p) {
  const int n = a.order();
  if (p == std::round(p) && std::abs(p) <= 64.0) {
    auto e = static_cast<long>(std::abs(p));
    Series result(n, 1.0);
    Series base = a;
    while (e > 0) {
      if (e & 1) result = result * base;
      base = base * base;
      e >>= 1;
    }
    return p < 0.0 ? Series(n, 1.0) / result : result;
  }
  if (!(a[0] > 0.0)) out_of_domain("pow (non-integer exponent)", a[0]);
  return exp(p * log(a));
}

Series pow(const Series& a, const Series& b) {
  if (is_constant(b)) return pow(a, b[0]).truncated(std::min(a.order(), b.order()));
  if (!(a[0] > 0.0)) out_of_domain("pow (variable exponent)", a[0]);
  return exp(b * log(a));
}

}  // namespace mulgeo
