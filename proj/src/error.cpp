#include "interlacing/error.hpp"

namespace interlacing {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::IterationFailure: return "IterationFailure";
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::NotPSD: return "NotPSD";
    case Errc::NormTooLarge: return "NormTooLarge";
    case Errc::NonzeroDiagonal: return "NonzeroDiagonal";
    case Errc::NotRealRooted: return "NotRealRooted";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::NonPositiveLeading: return "NonPositiveLeading";
    case Errc::BadWeights: return "BadWeights";
    case Errc::GridTooLarge: return "GridTooLarge";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::BadIndex: return "BadIndex";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::TooManyVectors: return "TooManyVectors";
    case Errc::SupportTooLarge: return "SupportTooLarge";
    case Errc::NotAboveRoots: return "NotAboveRoots";
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::HypothesisViolated: return "HypothesisViolated";
    case Errc::PreconditionFailed: return "PreconditionFailed";
    case Errc::NotDecomposition: return "NotDecomposition";
    case Errc::NotIsotropic: return "NotIsotropic";
    case Errc::BadParameters: return "BadParameters";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::ParseError: return "ParseError";
    case Errc::SchemaError: return "SchemaError";
    case Errc::UnknownSuite: return "UnknownSuite";
  }
  return "Unknown";
}

}  // namespace interlacing
