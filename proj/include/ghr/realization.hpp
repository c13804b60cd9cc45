#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ghr/error.hpp"
#include "ghr/geodesic.hpp"
#include "ghr/metric_space.hpp"

namespace ghr {

/// One-parameter family of pseudometrics rho_t on a ground set Z, t in [a, b].
class InterpolationFamily {
 public:
  using Evaluator = std::function<DistanceMatrix(double)>;

  InterpolationFamily(std::size_t ground_size, double a, double b, Evaluator evaluator,
                      std::vector<std::string> labels = {});

  /// (1-t)|xx'| + t|yy'| on the elements of a correspondence, t in [0, 1].
  static InterpolationFamily rectilinear(std::shared_ptr<const RectilinearPullback> pullback);
  static InterpolationFamily constant(DistanceMatrix dist, double a = 0.0, double b = 1.0,
                                      std::vector<std::string> labels = {});
  /// Exact at the knots, linear in between.
  static InterpolationFamily tabulated(std::vector<double> knots, std::vector<DistanceMatrix> values,
                                       std::vector<std::string> labels = {});

  std::size_t ground_size() const noexcept { return ground_size_; }
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Throws ParameterOutOfRange outside [a, b].
  DistanceMatrix dist_at(double t) const;

  /// Set only for families built by rectilinear().
  const RectilinearPullback* pullback() const noexcept { return pullback_.get(); }

 private:
  std::size_t ground_size_;
  double a_;
  double b_;
  Evaluator evaluator_;
  std::vector<std::string> labels_;
  std::shared_ptr<const RectilinearPullback> pullback_;
};

/// Strictly increasing sample of [a, b] that contains both endpoints.
class ParamGrid {
 public:
  explicit ParamGrid(std::vector<double> values);
  static ParamGrid uniform(double a, double b, std::size_t count);

  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t k) const noexcept { return values_[k]; }
  double a() const noexcept { return values_.front(); }
  double b() const noexcept { return values_.back(); }

 private:
  std::vector<double> values_;
};

inline constexpr std::size_t kDefaultGridSize = 11;

struct ProductPoint {
  std::size_t z;
  double t;
};

/// min over z of |z1 z|_t1 + |z z2|_t2, plus c |t1 - t2|.
double product_distance(const InterpolationFamily& family, double c, ProductPoint p1,
                        ProductPoint p2);

/// Monotonicity of t -> |zz'|_t. `violation` is how far the worst pair is from
/// being monotone: the smaller of its largest rise and its largest drop.
struct MonotoneCheck {
  bool ok = true;
  double violation = 0.0;
  std::size_t z1 = 0, z2 = 0;
  double t = 0.0, s = 0.0;
};

/// |zz'|_t - |zz'|_s <= 2c|t - s|. `deficit` is the largest excess of the left
/// side over the right (0 when the bound holds everywhere); `max_slope` the
/// steepest observed |Δ dist| / |Δ t|.
struct LipschitzCheck {
  bool ok = true;
  double deficit = 0.0;
  std::size_t z1 = 0, z2 = 0;
  double t = 0.0, s = 0.0;
  double max_slope = 0.0;
};

MonotoneCheck check_monotone_condition(const InterpolationFamily& family, const ParamGrid& grid,
                                       double tol);
LipschitzCheck check_lipschitz_condition(const InterpolationFamily& family, double c,
                                         const ParamGrid& grid, double tol);

// Exact checks for a rectilinear family: pairwise distances are affine in t
// with slope |yy'| - |xx'|, bounded in absolute value by dis R.
MonotoneCheck check_monotone_closed_form(const RectilinearPullback& pullback);
LipschitzCheck check_lipschitz_closed_form(const RectilinearPullback& pullback, double c,
                                           double tol);

struct ConditionReport {
  MonotoneCheck monotone;
  LipschitzCheck lipschitz;
  std::optional<MonotoneCheck> monotone_closed_form;
  std::optional<LipschitzCheck> lipschitz_closed_form;

  bool monotone_ok() const noexcept {
    return monotone.ok && (!monotone_closed_form || monotone_closed_form->ok);
  }
  bool lipschitz_ok() const noexcept {
    return lipschitz.ok && (!lipschitz_closed_form || lipschitz_closed_form->ok);
  }
  bool ok() const noexcept { return monotone_ok() && lipschitz_ok(); }
};

/// Grid checks always; closed-form checks as well for rectilinear families.
ConditionReport check_conditions(const InterpolationFamily& family, double c,
                                 const ParamGrid& grid, double tol);

class ConditionFailedError : public Error {
 public:
  explicit ConditionFailedError(ConditionReport report);
  const ConditionReport& report() const noexcept { return report_; }

 private:
  ConditionReport report_;
};

/// Z x grid with the product metric. Point k*|Z| + z is (z, grid[k]).
struct ProductSpace {
  InterpolationFamily family;
  double c;
  ParamGrid grid;
  std::vector<ProductPoint> points;
  DistanceMatrix dist;
  ConditionReport conditions;
  bool forced = false;  // built although a condition failed

  std::size_t slice_size() const noexcept { return family.ground_size(); }
  std::size_t index(std::size_t k, std::size_t z) const noexcept { return k * slice_size() + z; }
  std::vector<std::size_t> slice_indices(std::size_t k) const;
};

struct BuildOptions {
  double tol = kDefaultTolerance;
  bool force = false;
};

/// Throws NonpositiveC, or ConditionFailed unless options.force is set.
ProductSpace build_product(InterpolationFamily family, double c, ParamGrid grid,
                           const BuildOptions& options = {});

struct CorollaryCheck {
  bool applicable = false;  // R optimal and c = 1/2 dis R
  double gh_distance = 0.0;
  double max_error = 0.0;   // max |d_H(Z_t, Z_s) - d_GH |t - s||
};

struct VerificationReport {
  double tol = kDefaultTolerance;
  MetricKind kind = MetricKind::Metric;
  bool symmetric = true;
  bool zero_diagonal = true;
  ConditionReport conditions;
  bool forced = false;
  double max_triangle_violation = 0.0;
  std::size_t triangle_i = 0, triangle_j = 0, triangle_k = 0;
  double slice_hausdorff_max_error = 0.0;
  double slice_min_distance_max_error = 0.0;
  double restriction_max_error = 0.0;
  double fiber_max_error = 0.0;
  std::vector<std::vector<double>> slice_hausdorff;  // d_H(Z_t, Z_s) per grid pair
  std::optional<CorollaryCheck> corollary;

  bool monotone_ok() const noexcept { return conditions.monotone_ok(); }
  bool lipschitz_ok() const noexcept { return conditions.lipschitz_ok(); }
  bool triangle_ok() const noexcept { return max_triangle_violation <= tol; }
  bool hausdorff_ok() const noexcept {
    return slice_hausdorff_max_error <= tol && slice_min_distance_max_error <= tol;
  }
  bool restriction_ok() const noexcept { return restriction_max_error <= tol; }
  bool fiber_ok() const noexcept { return fiber_max_error <= tol; }
  bool corollary_ok() const noexcept {
    return !corollary || !corollary->applicable || corollary->max_error <= tol;
  }
  bool passed() const noexcept {
    return symmetric && zero_diagonal && monotone_ok() && lipschitz_ok() && triangle_ok() &&
           hausdorff_ok() && restriction_ok() && fiber_ok() && corollary_ok();
  }
};

VerificationReport verify_product(const ProductSpace& product, double tol = kDefaultTolerance);

struct Realization {
  ProductSpace product;
  VerificationReport report;
};

/// Product over R x [0,1] with c = 1/2 dis R (or the override), verified.
/// Throws DegenerateGeodesic when dis R = 0 and no override is given.
Realization realize_geodesic(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                             const Correspondence& corr, const ParamGrid& grid,
                             std::optional<double> c_override = std::nullopt,
                             const BuildOptions& options = {});

}  // namespace ghr
