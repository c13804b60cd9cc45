#include "ghr/error.hpp"

#include <sstream>

namespace ghr {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NonFiniteEntry: return "NonFiniteEntry";
    case ErrorCode::AsymmetricMatrix: return "AsymmetricMatrix";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::NonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorCode::TriangleViolation: return "TriangleViolation";
    case ErrorCode::ZeroOffDiagonal: return "ZeroOffDiagonal";
    case ErrorCode::EmptySubset: return "EmptySubset";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::MixedOwners: return "MixedOwners";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::NotACorrespondence: return "NotACorrespondence";
    case ErrorCode::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorCode::NotOptimalCorrespondence: return "NotOptimalCorrespondence";
    case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::NonpositiveC: return "NonpositiveC";
    case ErrorCode::ConditionFailed: return "ConditionFailed";
    case ErrorCode::DegenerateGeodesic: return "DegenerateGeodesic";
  }
  return "Unknown";
}

namespace {

std::string triangle_message(std::size_t i, std::size_t j, std::size_t k, double deficit) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << i << "," << j << "," << k << ", deficit=" << deficit << ")";
  return os.str();
}

}  // namespace

TriangleViolationError::TriangleViolationError(std::size_t i, std::size_t j, std::size_t k,
                                               double deficit)
    : Error(ErrorCode::TriangleViolation, triangle_message(i, j, k, deficit)),
      i_(i), j_(j), k_(k), deficit_(deficit) {}

}  // namespace ghr
