#include "sgp/error.hpp"

namespace sgp {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::NonfiniteWeight: return "NonfiniteWeight";
    case ErrorCode::ZeroWeight: return "ZeroWeight";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::BasisDegenerate: return "BasisDegenerate";
    case ErrorCode::InsufficientSpectrum: return "InsufficientSpectrum";
    case ErrorCode::MultiComponent: return "MultiComponent";
    case ErrorCode::SolverFailed: return "SolverFailed";
    case ErrorCode::DegenerateVector: return "DegenerateVector";
    case ErrorCode::EmptySide: return "EmptySide";
    case ErrorCode::BadOverrideIndex: return "BadOverrideIndex";
    case ErrorCode::BadEdgeIndex: return "BadEdgeIndex";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Asymmetric: return "Asymmetric";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace sgp
