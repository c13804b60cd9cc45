#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ghr {

enum class ErrorCode {
  InvalidInput,
  NotSquare,
  NonFiniteEntry,
  AsymmetricMatrix,
  NegativeEntry,
  NonzeroDiagonal,
  TriangleViolation,
  ZeroOffDiagonal,
  EmptySubset,
  IndexOutOfRange,
  MixedOwners,
  SizeMismatch,
  NotACorrespondence,
  SearchSpaceTooLarge,
  NotOptimalCorrespondence,
  ParameterOutOfRange,
  NonpositiveC,
  ConditionFailed,
  DegenerateGeodesic,
};

const char* to_string(ErrorCode code) noexcept;

/// Base of every error raised by the library. The code selects the CLI exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// dist[i][j] > dist[i][k] + dist[k][j] + tol for the worst triple found.
class TriangleViolationError : public Error {
 public:
  TriangleViolationError(std::size_t i, std::size_t j, std::size_t k, double deficit);

  std::size_t i() const noexcept { return i_; }
  std::size_t j() const noexcept { return j_; }
  std::size_t k() const noexcept { return k_; }
  double deficit() const noexcept { return deficit_; }

 private:
  std::size_t i_, j_, k_;
  double deficit_;
};

}  // namespace ghr
