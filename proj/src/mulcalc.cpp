#include "mulgeo/mulcalc.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "mulgeo/error.hpp"

namespace mulgeo {

MulScalar mul_derivative(const LogJet& jet, int n) {
  if (n < 1 || n > jet.order()) {
    throw Error(ErrorKind::InvalidArgument,
                "derivative order " + std::to_string(n) + " outside [1, " + std::to_string(jet.order()) + "]");
  }
  return MulScalar::from_log(jet.log_derivative(n));
}

MulScalar mul_derivative(const ExprAst& f, MulScalar x, int n) {
  if (n < 1 || n > 6) {
    throw Error(ErrorKind::InvalidArgument, "derivative order must lie in [1, 6], got " + std::to_string(n));
  }
  return mul_derivative(evaluate_jet(f, x.log(), n), n);
}

MulScalar mul_derivative_fd(const std::function<double(double)>& f, MulScalar x, double log_step) {
  if (!(log_step > 0.0) || log_step > 0.1) {
    throw Error(ErrorKind::InvalidArgument, "log step must lie in (0, 0.1]");
  }
  const double up = f(x.value() * std::exp(log_step));
  const double down = f(x.value() * std::exp(-log_step));
  if (!(up > 0.0) || !(down > 0.0)) {
    throw Error(ErrorKind::EvalDomainError, "multiplicative difference needs a positive function");
  }
  return MulScalar::from_log((std::log(up) - std::log(down)) / (2.0 * log_step));
}

namespace {

struct SimpsonState {
  const std::function<double(double)>& g;
  long leaves = 0;
  long max_leaves;
};

double simpson_step(SimpsonState& st, double a, double fa, double b, double fb, double m, double fm,
                    double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = st.g(lm);
  const double frm = st.g(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (!std::isfinite(delta)) {
    throw Error(ErrorKind::QuadratureNonconvergence, "integrand is not finite on the interval");
  }
  // Below the rounding floor further subdivision cannot help.
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * (std::abs(left) + std::abs(right));
  if (std::abs(delta) > 15.0 * tol && std::abs(delta) > floor && depth >= 60) {
    throw Error(ErrorKind::QuadratureNonconvergence, "adaptive Simpson exceeded the subdivision depth");
  }
  if (std::abs(delta) <= 15.0 * tol || std::abs(delta) <= floor) {
    if (++st.leaves > st.max_leaves) {
      throw Error(ErrorKind::QuadratureNonconvergence,
                  "adaptive Simpson exceeded " + std::to_string(st.max_leaves) + " subintervals");
    }
    return left + right + delta / 15.0;
  }
  return simpson_step(st, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth + 1) +
         simpson_step(st, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth + 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& g, double lo, double hi, double tol,
                        long max_intervals) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "quadrature tolerance must be positive");
  if (lo == hi) return 0.0;
  if (hi < lo) return -adaptive_simpson(g, hi, lo, tol, max_intervals);
  SimpsonState st{g, 0, max_intervals};
  const double m = 0.5 * (lo + hi);
  const double fa = g(lo);
  const double fb = g(hi);
  const double fm = g(m);
  const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(st, lo, fa, hi, fb, m, fm, whole, tol, 0);
}

MulScalar mul_integral(const std::function<double(double)>& f, MulScalar a, MulScalar b, double tol) {
  if (a.value() > b.value()) {
    throw Error(ErrorKind::InvalidArgument, "multiplicative integral needs a <= b");
  }
  const auto log_integrand = [&f](double u) {
    const double v = f(std::exp(u));
    if (!(v > 0.0)) {
      throw Error(ErrorKind::EvalDomainError,
                  "integrand must be positive, got " + std::to_string(v) + " at x = " + std::to_string(std::exp(u)));
    }
    return std::log(v);
  };
  return MulScalar::from_log(adaptive_simpson(log_integrand, a.log(), b.log(), tol));
}

MulScalar mul_integral(const ExprAst& f, MulScalar a, MulScalar b, double tol) {
  return mul_integral([&f](double x) { return evaluate(f, x); }, a, b, tol);
}

Series finite_difference_series(const std::function<double(double)>& g, double u0, int order, double h) {
  std::array<double, 7> f{};
  for (int k = -3; k <= 3; ++k) {
    if (k == 0 || order >= 1) f[static_cast<std::size_t>(k + 3)] = g(u0 + k * h);
  }
  return finite_difference_series(f, order, h);
}

Series finite_difference_series(const std::array<double, 7>& f, int order, double h) {
  if (order < 0 || order > 4) {
    throw Error(ErrorKind::InvalidArgument, "finite-difference jets support orders 0..4");
  }
  if (!(h > 0.0)) throw Error(ErrorKind::InvalidArgument, "finite-difference step must be positive");
  const auto at = [&f](int k) { return f[static_cast<std::size_t>(k + 3)]; };
  Series s(order, at(0));
  if (order >= 1) s[1] = (-at(2) + 8.0 * at(1) - 8.0 * at(-1) + at(-2)) / (12.0 * h);
  if (order >= 2) {
    s[2] = (-at(2) + 16.0 * at(1) - 30.0 * at(0) + 16.0 * at(-1) - at(-2)) / (12.0 * h * h) / 2.0;
  }
  if (order >= 3) {
    s[3] = (-at(3) + 8.0 * at(2) - 13.0 * at(1) + 13.0 * at(-1) - 8.0 * at(-2) + at(-3)) /
           (8.0 * h * h * h) / 6.0;
  }
  if (order >= 4) {
    s[4] = (-at(3) + 12.0 * at(2) - 39.0 * at(1) + 56.0 * at(0) - 39.0 * at(-1) + 12.0 * at(-2) - at(-3)) /
           (6.0 * h * h * h * h) / 24.0;
  }
  return s;
}

}  // namespace mulgeo
