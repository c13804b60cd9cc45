#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ghr/metric_space.hpp"

namespace ghr {

struct IndexPair {
  std::size_t x = 0;
  std::size_t y = 0;

  friend auto operator<=>(const IndexPair&, const IndexPair&) = default;
};

/// Nonempty subset of [0,m) x [0,n), kept sorted and deduplicated.
class Relation {
 public:
  Relation(std::size_t m, std::size_t n, std::vector<IndexPair> pairs);

  std::size_t source_size() const noexcept { return m_; }
  std::size_t target_size() const noexcept { return n_; }
  const std::vector<IndexPair>& pairs() const noexcept { return pairs_; }
  std::size_t size() const noexcept { return pairs_.size(); }

  /// Both canonical projections are onto.
  bool is_surjective() const;

  /// Bit i*n + j is set for every pair (i, j). Requires m*n <= 64.
  std::uint64_t mask() const;

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  std::size_t m_;
  std::size_t n_;
  std::vector<IndexPair> pairs_;
};

/// A relation whose projections onto both factors are surjective.
class Correspondence : public Relation {
 public:
  Correspondence(std::size_t m, std::size_t n, std::vector<IndexPair> pairs);
  explicit Correspondence(Relation rel);

  static Correspondence from_mask(std::size_t m, std::size_t n, std::uint64_t mask);
  static Correspondence identity(std::size_t n);

  bool is_bijection() const noexcept;
  Correspondence transposed() const;
};

/// max | |xx'| - |yy'| | over ordered pairs of elements of `rel`.
double distortion(const Relation& rel, const FiniteMetricSpace& x, const FiniteMetricSpace& y);

/// Exhaustive search refuses more than this many candidate pairs (2^25 masks).
inline constexpr std::size_t kMaxExactPairs = 25;

/// Yields every correspondence between [0,m) and [0,n) once, in increasing
/// bitmask order.
class CorrespondenceStream {
 public:
  CorrespondenceStream(std::size_t m, std::size_t n);

  std::optional<Correspondence> next();

 private:
  std::size_t m_;
  std::size_t n_;
  std::uint64_t mask_ = 0;
  std::uint64_t end_;
};

std::uint64_t count_correspondences(std::size_t m, std::size_t n);

enum class GHMethod { Exact, Heuristic };

const char* to_string(GHMethod method) noexcept;

struct GHResult {
  double value;  // half the distortion of the witness
  Correspondence witness;
  GHMethod method;
  bool is_certified_optimal;
};

/// Branch-and-bound over pair-inclusion bitmasks. Among all minimizers the
/// witness has the fewest pairs, then the smallest bitmask.
GHResult gh_distance_exact(const FiniteMetricSpace& x, const FiniteMetricSpace& y);

struct HeuristicConfig {
  std::size_t iterations = 1000;  // neighbour evaluations per restart
  std::uint64_t seed = 0;
  std::size_t restarts = 32;
};

/// Local search upper bound on d_GH. Deterministic for a given seed.
GHResult gh_distance_heuristic(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                               const HeuristicConfig& config = {});

/// 1/2 |diam X - diam Y|, a lower bound on d_GH.
double gh_lower_bound(const FiniteMetricSpace& x, const FiniteMetricSpace& y);

/// Rank-wise pairing of points ordered by eccentricity; the heuristic's start.
Correspondence eccentricity_matching(const FiniteMetricSpace& x, const FiniteMetricSpace& y);

}  // namespace ghr
