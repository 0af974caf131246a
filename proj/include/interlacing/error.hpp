#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace interlacing {

// Failure categories raised by the library. The CLI maps these onto exit
// codes and the Python module onto exception messages, so keep names stable.
enum class Errc {
  IterationFailure,
  NotHermitian,
  NotPSD,
  NormTooLarge,
  NonzeroDiagonal,
  NotRealRooted,
  DegreeMismatch,
  NonPositiveLeading,
  BadWeights,
  GridTooLarge,
  DimensionMismatch,
  BadIndex,
  LengthMismatch,
  TooManyVectors,
  SupportTooLarge,
  NotAboveRoots,
  ZeroDenominator,
  HypothesisViolated,
  PreconditionFailed,
  NotDecomposition,
  NotIsotropic,
  BadParameters,
  BudgetExceeded,
  ParseError,
  SchemaError,
  UnknownSuite,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace interlacing
