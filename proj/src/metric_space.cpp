#include "ghr/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ghr/error.hpp"

namespace ghr {

namespace {

std::string at(std::size_t i, std::size_t j) {
  std::ostringstream os;
  os << "entry (" << i << "," << j << ")";
  return os.str();
}

void require_nonempty(std::span<const std::size_t> set) {
  if (set.empty()) throw Error(ErrorCode::EmptySubset, "subset must be nonempty");
}

void require_owner(const FiniteMetricSpace& space, const PointSubset& subset) {
  if (&subset.owner() != &space)
    throw Error(ErrorCode::MixedOwners, "subset belongs to a different space");
}

}  // namespace

DistanceMatrix DistanceMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  DistanceMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      std::ostringstream os;
      os << "row " << i << " has " << rows[i].size() << " entries, expected " << n;
      throw Error(ErrorCode::NotSquare, os.str());
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(rows[i][j])) throw Error(ErrorCode::NonFiniteEntry, at(i, j));
      m(i, j) = rows[i][j];
    }
  }
  return m;
}

std::vector<std::vector<double>> DistanceMatrix::rows() const {
  std::vector<std::vector<double>> out(n_, std::vector<double>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out[i][j] = (*this)(i, j);
  return out;
}

const char* to_string(MetricKind kind) noexcept {
  return kind == MetricKind::Metric ? "metric" : "pseudometric";
}

TriangleDeficit worst_triangle_deficit(const DistanceMatrix& dist) {
  TriangleDeficit worst;
  const std::size_t n = dist.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const double deficit = dist(i, j) - (dist(i, k) + dist(k, j));
        if (deficit > worst.deficit) worst = {deficit, i, j, k};
      }
  return worst;
}

double FiniteMetricSpace::diameter() const noexcept {
  double d = 0.0;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i + 1; j < size(); ++j) d = std::max(d, dist_(i, j));
  return d;
}

FiniteMetricSpace validate_metric(DistanceMatrix matrix, MetricKind kind, double tol,
                                  std::vector<std::string> labels, std::string name) {
  const std::size_t n = matrix.size();
  if (n == 0) throw Error(ErrorCode::InvalidInput, "a space needs at least one point");
  if (!(tol >= 0.0)) throw Error(ErrorCode::InvalidInput, "tolerance must be non-negative");
  if (labels.empty()) {
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  } else if (labels.size() != n) {
    throw Error(ErrorCode::SizeMismatch, "label count differs from matrix size");
  }

  bool zero_off_diagonal = false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double d = matrix(i, j);
      if (!std::isfinite(d)) throw Error(ErrorCode::NonFiniteEntry, at(i, j));
      if (d < 0.0) throw Error(ErrorCode::NegativeEntry, at(i, j));
      if (i == j && d != 0.0) throw Error(ErrorCode::NonzeroDiagonal, at(i, i));
      if (d != matrix(j, i)) throw Error(ErrorCode::AsymmetricMatrix, at(i, j));
      if (i != j && d == 0.0) zero_off_diagonal = true;
    }
  }

  const TriangleDeficit worst = worst_triangle_deficit(matrix);
  if (worst.deficit > tol) throw TriangleViolationError(worst.i, worst.j, worst.k, worst.deficit);

  if (zero_off_diagonal && kind == MetricKind::Metric)
    throw Error(ErrorCode::ZeroOffDiagonal, "distinct points at distance 0");

  FiniteMetricSpace space;
  space.name_ = std::move(name);
  space.labels_ = std::move(labels);
  space.dist_ = std::move(matrix);
  space.kind_ = zero_off_diagonal ? MetricKind::Pseudometric : MetricKind::Metric;
  return space;
}

FiniteMetricSpace validate_metric(const std::vector<std::vector<double>>& rows, MetricKind kind,
                                  double tol) {
  return validate_metric(DistanceMatrix::from_rows(rows), kind, tol);
}

PointSubset::PointSubset(const FiniteMetricSpace& owner, std::vector<std::size_t> indices)
    : owner_(&owner), indices_(std::move(indices)) {
  require_nonempty(indices_);
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
  if (indices_.back() >= owner.size())
    throw Error(ErrorCode::IndexOutOfRange, "subset index " + std::to_string(indices_.back()) +
                                                " outside a space of size " +
                                                std::to_string(owner.size()));
}

double point_set_distance(const DistanceMatrix& dist, std::size_t x,
                          std::span<const std::size_t> set) {
  require_nonempty(set);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a : set) best = std::min(best, dist(x, a));
  return best;
}

double set_set_distance(const DistanceMatrix& dist, std::span<const std::size_t> a,
                        std::span<const std::size_t> b) {
  require_nonempty(a);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t x : a) best = std::min(best, point_set_distance(dist, x, b));
  return best;
}

double hausdorff_distance(const DistanceMatrix& dist, std::span<const std::size_t> a,
                          std::span<const std::size_t> b) {
  require_nonempty(a);
  require_nonempty(b);
  double h = 0.0;
  for (std::size_t x : a) h = std::max(h, point_set_distance(dist, x, b));
  for (std::size_t y : b) h = std::max(h, point_set_distance(dist, y, a));
  return h;
}

double point_set_distance(const FiniteMetricSpace& space, std::size_t x, const PointSubset& a) {
  require_owner(space, a);
  if (x >= space.size()) throw Error(ErrorCode::IndexOutOfRange, "point index out of range");
  return point_set_distance(space.matrix(), x, a.indices());
}

double set_set_distance(const FiniteMetricSpace& space, const PointSubset& a,
                        const PointSubset& b) {
  require_owner(space, a);
  require_owner(space, b);
  return set_set_distance(space.matrix(), a.indices(), b.indices());
}

double hausdorff_distance(const FiniteMetricSpace& space, const PointSubset& a,
                          const PointSubset& b) {
  require_owner(space, a);
  require_owner(space, b);
  return hausdorff_distance(space.matrix(), a.indices(), b.indices());
}

}  // namespace ghr
