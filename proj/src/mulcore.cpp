#include "mulgeo/mulcore.hpp"

#include <string>

#include "mulgeo/error.hpp"

namespace mulgeo {
namespace {

[[noreturn]] void overflow(const char* what, double log_value) {
  throw Error(ErrorKind::RangeOverflow,
              std::string(what) + ": |log| = " + std::to_string(std::abs(log_value)) +
                  " exceeds " + std::to_string(kMaxLogMagnitude));
}

// Builds a scalar from a value already known to be positive and finite, only
// range-checking its logarithm.
MulScalar checked(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) overflow(what, std::log(value));
  return MulScalar(value);
}

MulScalar exp_checked(double exponent, const char* what) {
  if (!std::isfinite(exponent) || std::abs(exponent) > kMaxLogMagnitude) overflow(what, exponent);
  return MulScalar::from_log(exponent);
}

}  // namespace

MulScalar::MulScalar(double value) : value_(value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorKind::DomainError,
                "multiplicative scalar must be a positive finite real, got " + std::to_string(value));
  }
  log_ = std::log(value);
  if (std::abs(log_) > kMaxLogMagnitude) overflow("MulScalar", log_);
}

MulScalar MulScalar::from_log(double u) {
  if (!std::isfinite(u) || std::abs(u) > kMaxLogMagnitude) overflow("from_log", u);
  return MulScalar(std::exp(u), u, Unchecked{});
}

MulScalar MulScalar::one() noexcept { return MulScalar(std::numbers::e, 1.0, Unchecked{}); }

double log_view(MulScalar a) noexcept { return a.log(); }
MulScalar from_log(double u) { return MulScalar::from_log(u); }

MulScalar add(MulScalar a, MulScalar b) { return checked(a.value() * b.value(), "add*"); }

MulScalar sub(MulScalar a, MulScalar b) { return checked(a.value() / b.value(), "sub*"); }

MulScalar mul(MulScalar a, MulScalar b) { return exp_checked(a.log() * b.log(), "mul*"); }

MulScalar div(MulScalar a, MulScalar b) {
  const double lb = b.log();
  if (lb == 0.0) throw Error(ErrorKind::DivisionByMulZero, "div*: divisor is the multiplicative zero 1");
  return exp_checked(a.log() / lb, "div*");
}

MulScalar neg(MulScalar a) { return checked(1.0 / a.value(), "neg*"); }

MulScalar field_op(MulScalar a, MulScalar b, FieldOp op) {
  switch (op) {
    case FieldOp::Add: return add(a, b);
    case FieldOp::Sub: return sub(a, b);
    case FieldOp::Mul: return mul(a, b);
    case FieldOp::Div: return div(a, b);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown field operation");
}

MulScalar square(MulScalar a) {
  const double l = a.log();
  return exp_checked(l * l, "square*");
}

MulScalar sqrt(MulScalar a) {
  const double l = a.log();
  if (l < 0.0) {
    throw Error(ErrorKind::NegativeMulSqrt,
                "sqrt*: argument " + std::to_string(a.value()) + " is below the multiplicative zero");
  }
  return exp_checked(std::sqrt(l), "sqrt*");
}

MulScalar abs(MulScalar a) { return a.value() >= 1.0 ? a : checked(1.0 / a.value(), "abs*"); }

MulScalar power_op(MulScalar a, PowerOp op) {
  switch (op) {
    case PowerOp::Square: return square(a);
    case PowerOp::Sqrt: return sqrt(a);
    case PowerOp::Abs: return abs(a);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown power operation");
}

MulScalar cos(MulScalar x) { return exp_checked(std::cos(x.log()), "cos*"); }
MulScalar sin(MulScalar x) { return exp_checked(std::sin(x.log()), "sin*"); }

namespace {

void require_off_pole(MulScalar x, const char* what) {
  // cos(log x) vanishes only at pi/2 + k*pi; double rounding never yields an exact zero there,
  // so a small window marks the pole.
  if (std::abs(std::cos(x.log())) < 1e-15) {
    throw Error(ErrorKind::DomainError, std::string(what) + ": log argument is a pole pi/2 + k*pi");
  }
}

}  // namespace

MulScalar tan(MulScalar x) {
  require_off_pole(x, "tan*");
  return exp_checked(std::tan(x.log()), "tan*");
}

MulScalar sec(MulScalar x) {
  require_off_pole(x, "sec*");
  return exp_checked(1.0 / std::cos(x.log()), "sec*");
}

MulScalar arccos(MulScalar x) {
  double l = x.log();
  if (std::abs(l) > 1.0) {
    if (std::abs(l) - 1.0 > kArccosClamp) {
      throw Error(ErrorKind::DomainError,
                  "arccos*: argument must lie in [e^-1, e], log = " + std::to_string(l));
    }
    l = l > 0.0 ? 1.0 : -1.0;
  }
  return exp_checked(std::acos(l), "arccos*");
}

MulScalar arctan(MulScalar x) { return exp_checked(std::atan(x.log()), "arctan*"); }

MulScalar trig_op(MulScalar x, TrigOp op) {
  switch (op) {
    case TrigOp::Cos: return cos(x);
    case TrigOp::Sin: return sin(x);
    case TrigOp::Tan: return tan(x);
    case TrigOp::Sec: return sec(x);
    case TrigOp::Arccos: return arccos(x);
    case TrigOp::Arctan: return arctan(x);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown trigonometric operation");
}

double log_distance(MulScalar a, MulScalar b) noexcept { return std::abs(a.log() - b.log()); }

bool near(MulScalar a, MulScalar b, double tol) noexcept { return log_distance(a, b) <= tol; }

}  // namespace mulgeo
