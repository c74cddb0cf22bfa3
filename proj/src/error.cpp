#include "riccati/error.hpp"

namespace riccati {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonSquare: return "NonSquare";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kNormGuardExceeded: return "NormGuardExceeded";
    case ErrorCode::kSingularMatrix: return "SingularMatrix";
    case ErrorCode::kConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::kSpectrumOverlap: return "SpectrumOverlap";
    case ErrorCode::kSizeExceeded: return "SizeExceeded";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNoStabilizingStart: return "NoStabilizingStart";
    case ErrorCode::kMaxItersExceeded: return "MaxItersExceeded";
    case ErrorCode::kRankMismatch: return "RankMismatch";
    case ErrorCode::kSingularU: return "SingularU";
    case ErrorCode::kNormOverflow: return "NormOverflow";
    case ErrorCode::kSingularBracket: return "SingularBracket";
    case ErrorCode::kSingularNonlinearFlow: return "SingularNonlinearFlow";
    case ErrorCode::kEmptyBasis: return "EmptyBasis";
    case ErrorCode::kZeroReference: return "ZeroReference";
    case ErrorCode::kConfig: return "ConfigError";
    case ErrorCode::kMixedBenchmark: return "MixedBenchmark";
    case ErrorCode::kIo: return "IoError";
  }
  return "Unknown";
}

}  // namespace riccati
