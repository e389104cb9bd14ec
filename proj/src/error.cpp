#include "mulgeo/error.hpp"

namespace mulgeo {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::DivisionByMulZero: return "division-by-mul-zero";
    case ErrorKind::RangeOverflow: return "range-overflow";
    case ErrorKind::NegativeMulSqrt: return "negative-mul-sqrt";
    case ErrorKind::DomainError: return "domain-error";
    case ErrorKind::ZeroVectorAngle: return "zero-vector-angle";
    case ErrorKind::LexError: return "lex-error";
    case ErrorKind::ParseError: return "parse-error";
    case ErrorKind::UnknownFunction: return "unknown-function";
    case ErrorKind::UnknownIdentifier: return "unknown-identifier";
    case ErrorKind::EvalDomainError: return "eval-domain-error";
    case ErrorKind::EvalOverflow: return "eval-overflow";
    case ErrorKind::JetSingularity: return "jet-singularity";
    case ErrorKind::QuadratureNonconvergence: return "quadrature-nonconvergence";
    case ErrorKind::NotRegular: return "not-regular";
    case ErrorKind::NotBiregular: return "not-biregular";
    case ErrorKind::NotUnitSpeed: return "not-unit-speed";
    case ErrorKind::NotSpherical: return "not-spherical";
    case ErrorKind::DegenerateFit: return "degenerate-fit";
    case ErrorKind::StepDomainError: return "step-domain-error";
    case ErrorKind::FrameDrift: return "frame-drift";
    case ErrorKind::UnknownCurve: return "unknown-curve";
    case ErrorKind::IoError: return "io-error";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message,
             std::optional<std::size_t> position, std::string expected)
    : std::runtime_error(message),
      kind_(kind),
      position_(position),
      expected_(std::move(expected)) {}

}  // namespace mulgeo
