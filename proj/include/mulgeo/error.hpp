#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace mulgeo {

enum class ErrorKind {
  InvalidArgument,
  DivisionByMulZero,
  RangeOverflow,
  NegativeMulSqrt,
  DomainError,
  ZeroVectorAngle,
  LexError,
  ParseError,
  UnknownFunction,
  UnknownIdentifier,
  EvalDomainError,
  EvalOverflow,
  JetSingularity,
  QuadratureNonconvergence,
  NotRegular,
  NotBiregular,
  NotUnitSpeed,
  NotSpherical,
  DegenerateFit,
  StepDomainError,
  FrameDrift,
  UnknownCurve,
  IoError,
};

/// Stable kebab-case name used in diagnostics, e.g. "division-by-mul-zero".
const char* to_string(ErrorKind kind) noexcept;

/// The single exception type thrown by the library. Lexer and parser errors
/// carry the byte offset into the source text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<std::size_t> position = std::nullopt,
        std::string expected = {});

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> position() const noexcept { return position_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> position_;
  std::string expected_;
};

}  // namespace mulgeo
