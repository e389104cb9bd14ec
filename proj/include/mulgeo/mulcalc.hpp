#pragma once

// Multiplicative calculus:
//   f*(x)       = e^{x (log f(x))'}                 (derivative)
//   int*_a^b f  = e^{int_a^b (1/x) log f(x) dx}     (integral)
// Both are evaluated in the substitution u = log x, where f* becomes the
// classical derivative of u -> log f(e^u).

#include <array>
#include <functional>

#include "mulgeo/expr.hpp"
#include "mulgeo/mulcore.hpp"
#include "mulgeo/series.hpp"

namespace mulgeo {

enum class Backend { Jet, FiniteDifference };

inline constexpr int kDefaultJetOrder = 4;
inline constexpr double kDefaultLogStep = 1e-4;
inline constexpr double kDefaultQuadratureTol = 1e-10;
inline constexpr long kMaxQuadratureIntervals = 1L << 20;

/// n-th multiplicative derivative f^{*(n)}(x) = e^{n! c_n}, read from the jet
/// of log f(e^u) at u = log x.
MulScalar mul_derivative(const ExprAst& f, MulScalar x, int n = 1);
MulScalar mul_derivative(const LogJet& jet, int n = 1);

/// Central multiplicative difference
/// e^{(log f(x e^d) - log f(x e^-d)) / (2d)} for d in (0, 0.1].
MulScalar mul_derivative_fd(const std::function<double(double)>& f, MulScalar x,
                            double log_step = kDefaultLogStep);

/// Multiplicative integral of f over [a, b], by adaptive Simpson quadrature
/// of log f(e^u) over [log a, log b].
MulScalar mul_integral(const ExprAst& f, MulScalar a, MulScalar b,
                       double tol = kDefaultQuadratureTol);
MulScalar mul_integral(const std::function<double(double)>& f, MulScalar a, MulScalar b,
                       double tol = kDefaultQuadratureTol);

/// Adaptive Simpson quadrature of g over [lo, hi] to absolute tolerance tol.
/// Subdivision order is fixed, so results are deterministic. Throws
/// QuadratureNonconvergence once more than max_intervals leaves are needed.
double adaptive_simpson(const std::function<double(double)>& g, double lo, double hi,
                        double tol = kDefaultQuadratureTol,
                        long max_intervals = kMaxQuadratureIntervals);

/// Pseudo-jet of g about u0 from central finite differences with step h:
/// coefficients c_k = g^{(k)}(u0)/k! for k <= order (order <= 4), each from a
/// fourth-order accurate central stencil.
Series finite_difference_series(const std::function<double(double)>& g, double u0, int order,
                                double h);
/// Same stencils from precomputed samples g(u0 + k h), k = -3..3.
Series finite_difference_series(const std::array<double, 7>& samples, int order, double h);

}  // namespace mulgeo
