#pragma once

// The multiplicative field R* on the positive reals. Every operation is the
// classical one transported through the natural logarithm: 0* = 1, 1* = e.

#include <cmath>
#include <numbers>

namespace mulgeo {

/// Largest |log value| a MulScalar may carry before it counts as overflow.
inline constexpr double kMaxLogMagnitude = 700.0;

/// Clamp window for arccos* arguments that stray past [e^-1, e] by round-off.
inline constexpr double kArccosClamp = 1e-12;

/// A positive real regarded as an element of the multiplicative field.
class MulScalar {
 public:
  /// The multiplicative zero 0* = 1.
  constexpr MulScalar() noexcept = default;

  /// Throws DomainError for non-positive or non-finite input and
  /// RangeOverflow when |log value| > 700.
  explicit MulScalar(double value);

  /// e^u. Throws RangeOverflow when |u| > 700.
  static MulScalar from_log(double u);

  static MulScalar zero() noexcept { return MulScalar(); }
  static MulScalar one() noexcept;

  double value() const noexcept { return value_; }
  /// Natural log of value(), computed once at construction. Exact inverse of
  /// from_log.
  double log() const noexcept { return log_; }

 private:
  struct Unchecked {};
  constexpr MulScalar(double value, double log, Unchecked) noexcept : value_(value), log_(log) {}

  double value_ = 1.0;
  double log_ = 0.0;
};

double log_view(MulScalar a) noexcept;
MulScalar from_log(double u);

enum class FieldOp { Add, Sub, Mul, Div };
enum class PowerOp { Square, Sqrt, Abs };
enum class TrigOp { Cos, Sin, Tan, Sec, Arccos, Arctan };

MulScalar field_op(MulScalar a, MulScalar b, FieldOp op);
MulScalar power_op(MulScalar a, PowerOp op);
MulScalar trig_op(MulScalar x, TrigOp op);

MulScalar add(MulScalar a, MulScalar b);
MulScalar sub(MulScalar a, MulScalar b);
MulScalar mul(MulScalar a, MulScalar b);
/// Throws DivisionByMulZero when b = 0* (= 1).
MulScalar div(MulScalar a, MulScalar b);
/// -*a = e^{-log a}.
MulScalar neg(MulScalar a);

MulScalar square(MulScalar a);
/// Throws NegativeMulSqrt when a < 1.
MulScalar sqrt(MulScalar a);
MulScalar abs(MulScalar a);

MulScalar cos(MulScalar x);
MulScalar sin(MulScalar x);
MulScalar tan(MulScalar x);
MulScalar sec(MulScalar x);
MulScalar arccos(MulScalar x);
MulScalar arctan(MulScalar x);

inline MulScalar operator+(MulScalar a, MulScalar b) { return add(a, b); }
inline MulScalar operator-(MulScalar a, MulScalar b) { return sub(a, b); }
inline MulScalar operator*(MulScalar a, MulScalar b) { return mul(a, b); }
inline MulScalar operator/(MulScalar a, MulScalar b) { return div(a, b); }
inline MulScalar operator-(MulScalar a) { return neg(a); }

/// Ratio metric: |log a - log b|.
double log_distance(MulScalar a, MulScalar b) noexcept;

/// True when |log a - log b| <= tol.
bool near(MulScalar a, MulScalar b, double tol) noexcept;

}  // namespace mulgeo
