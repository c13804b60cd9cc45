#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ghr {

/// Dense row-major square matrix of pairwise distances.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  /// Throws NotSquare / NonFiniteEntry; does not check any metric axiom.
  static DistanceMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }

  std::vector<std::vector<double>> rows() const;

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

enum class MetricKind { Metric, Pseudometric };

const char* to_string(MetricKind kind) noexcept;

struct TriangleDeficit {
  double deficit = 0.0;  // max of d(i,j) - d(i,k) - d(k,j); never negative
  std::size_t i = 0, j = 0, k = 0;
};

/// Worst triangle-inequality deficit over all triples, ties resolved to the
/// first triple in (i, j, k) order with i < j.
TriangleDeficit worst_triangle_deficit(const DistanceMatrix& dist);

class FiniteMetricSpace;

inline constexpr double kDefaultTolerance = 1e-9;

/// Checks the axioms and returns the space with the strictest kind that holds.
/// Symmetry and the zero diagonal are checked exactly; the triangle inequality
/// within the absolute tolerance `tol`. Empty labels become "p0", "p1", ...
FiniteMetricSpace validate_metric(DistanceMatrix matrix, MetricKind kind = MetricKind::Pseudometric,
                                  double tol = kDefaultTolerance,
                                  std::vector<std::string> labels = {}, std::string name = {});

/// Labeled finite (pseudo)metric space. Instances only come out of
/// validate_metric, so every live object satisfies the axioms for its kind.
class FiniteMetricSpace {
 public:
  std::size_t size() const noexcept { return dist_.size(); }
  double operator()(std::size_t i, std::size_t j) const noexcept { return dist_(i, j); }

  const DistanceMatrix& matrix() const noexcept { return dist_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::string& name() const noexcept { return name_; }
  MetricKind kind() const noexcept { return kind_; }
  double diameter() const noexcept;

  friend FiniteMetricSpace validate_metric(DistanceMatrix, MetricKind, double,
                                           std::vector<std::string>, std::string);

 private:
  FiniteMetricSpace() = default;

  std::string name_;
  std::vector<std::string> labels_;
  DistanceMatrix dist_;
  MetricKind kind_ = MetricKind::Metric;
};


FiniteMetricSpace validate_metric(const std::vector<std::vector<double>>& rows,
                                  MetricKind kind = MetricKind::Pseudometric,
                                  double tol = kDefaultTolerance);

/// Nonempty subset of the points of one space, stored sorted and deduplicated.
class PointSubset {
 public:
  PointSubset(const FiniteMetricSpace& owner, std::vector<std::size_t> indices);

  const FiniteMetricSpace& owner() const noexcept { return *owner_; }
  std::span<const std::size_t> indices() const noexcept { return indices_; }

 private:
  const FiniteMetricSpace* owner_;
  std::vector<std::size_t> indices_;
};

// Index-level kernels shared with the product space, which is not
// necessarily a validated metric space.
double point_set_distance(const DistanceMatrix& dist, std::size_t x,
                          std::span<const std::size_t> set);
double set_set_distance(const DistanceMatrix& dist, std::span<const std::size_t> a,
                        std::span<const std::size_t> b);
double hausdorff_distance(const DistanceMatrix& dist, std::span<const std::size_t> a,
                          std::span<const std::size_t> b);

/// |xA| = min over a in A of |xa|.
double point_set_distance(const FiniteMetricSpace& space, std::size_t x, const PointSubset& a);
/// |AB| = min over a in A, b in B of |ab|.
double set_set_distance(const FiniteMetricSpace& space, const PointSubset& a, const PointSubset& b);
/// max(max_a |aB|, max_b |Ab|).
double hausdorff_distance(const FiniteMetricSpace& space, const PointSubset& a,
                          const PointSubset& b);

}  // namespace ghr
