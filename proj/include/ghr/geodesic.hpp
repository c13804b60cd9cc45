#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "ghr/correspondence.hpp"
#include "ghr/metric_space.hpp"

namespace ghr {

/// Source and target distances pulled back onto the elements of a
/// correspondence. Computed once and shared by every slice of the geodesic.
class RectilinearPullback {
 public:
  RectilinearPullback(const Correspondence& corr, const FiniteMetricSpace& x,
                      const FiniteMetricSpace& y);

  const Correspondence& correspondence() const noexcept { return corr_; }
  std::size_t size() const noexcept { return corr_.size(); }
  const DistanceMatrix& source() const noexcept { return dx_; }
  const DistanceMatrix& target() const noexcept { return dy_; }
  /// "(xi,yj)" built from the labels of the two spaces.
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  /// Equals distortion(corr, x, y).
  double distortion() const noexcept { return distortion_; }

  double at(std::size_t p, std::size_t q, double t) const noexcept {
    return (1.0 - t) * dx_(p, q) + t * dy_(p, q);
  }
  DistanceMatrix matrix_at(double t) const;

 private:
  Correspondence corr_;
  DistanceMatrix dx_;
  DistanceMatrix dy_;
  std::vector<std::string> labels_;
  double distortion_ = 0.0;
};

/// The correspondence with the interpolated metric (1-t)|xx'| + t|yy'|.
/// The point set stays fixed for every t, so at t = 0 or 1 the slice may be a
/// pseudometric.
class GeodesicSlice {
 public:
  GeodesicSlice(std::shared_ptr<const RectilinearPullback> pullback, double t);

  double t() const noexcept { return t_; }
  std::size_t size() const noexcept { return pullback_->size(); }
  const RectilinearPullback& pullback() const noexcept { return *pullback_; }
  double operator()(std::size_t p, std::size_t q) const noexcept { return pullback_->at(p, q, t_); }

  DistanceMatrix matrix() const { return pullback_->matrix_at(t_); }
  /// Named "geodesic(t=<t>)"; kind is the strictest that holds.
  FiniteMetricSpace to_space(double tol = kDefaultTolerance) const;

 private:
  std::shared_ptr<const RectilinearPullback> pullback_;
  double t_;
};

GeodesicSlice geodesic_slice(const Correspondence& corr, const FiniteMetricSpace& x,
                             const FiniteMetricSpace& y, double t);

struct SliceGhCheck {
  double expected;  // |t - s| d_GH(X, Y)
  double actual;    // d_GH(R_t, R_s)
};

/// Tolerance used to decide that 1/2 dis R equals d_GH(X, Y).
inline constexpr double kOptimalityTolerance = 1e-12;

/// Compares d_GH between two slices of the geodesic with |t - s| d_GH(X, Y).
/// Requires an optimal correspondence with at most 5 pairs.
SliceGhCheck slice_gh_check(const Correspondence& corr, const FiniteMetricSpace& x,
                            const FiniteMetricSpace& y, double t, double s);

/// Shortest round-trip decimal form, as used in slice names.
std::string format_number(double v);

}  // namespace ghr
