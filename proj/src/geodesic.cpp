#include "ghr/geodesic.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "ghr/error.hpp"

namespace ghr {

namespace {

void require_unit_parameter(double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw Error(ErrorCode::ParameterOutOfRange, "t = " + format_number(t) + " is not in [0,1]");
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

RectilinearPullback::RectilinearPullback(const Correspondence& corr, const FiniteMetricSpace& x,
                                         const FiniteMetricSpace& y)
    : corr_(corr), dx_(corr.size()), dy_(corr.size()) {
  if (corr.source_size() != x.size() || corr.target_size() != y.size())
    throw Error(ErrorCode::SizeMismatch, "correspondence does not match the spaces");
  const auto& pairs = corr.pairs();
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    labels_.push_back("(" + x.label(pairs[p].x) + "," + y.label(pairs[p].y) + ")");
    for (std::size_t q = 0; q < pairs.size(); ++q) {
      dx_(p, q) = x(pairs[p].x, pairs[q].x);
      dy_(p, q) = y(pairs[p].y, pairs[q].y);
      distortion_ = std::max(distortion_, std::abs(dx_(p, q) - dy_(p, q)));
    }
  }
}

DistanceMatrix RectilinearPullback::matrix_at(double t) const {
  DistanceMatrix m(size());
  for (std::size_t p = 0; p < size(); ++p)
    for (std::size_t q = 0; q < size(); ++q) m(p, q) = at(p, q, t);
  return m;
}

GeodesicSlice::GeodesicSlice(std::shared_ptr<const RectilinearPullback> pullback, double t)
    : pullback_(std::move(pullback)), t_(t) {
  require_unit_parameter(t);
}

FiniteMetricSpace GeodesicSlice::to_space(double tol) const {
  return validate_metric(matrix(), MetricKind::Pseudometric, tol, pullback_->labels(),
                         "geodesic(t=" + format_number(t_) + ")");
}

GeodesicSlice geodesic_slice(const Correspondence& corr, const FiniteMetricSpace& x,
                             const FiniteMetricSpace& y, double t) {
  require_unit_parameter(t);
  return GeodesicSlice(std::make_shared<const RectilinearPullback>(corr, x, y), t);
}

SliceGhCheck slice_gh_check(const Correspondence& corr, const FiniteMetricSpace& x,
                            const FiniteMetricSpace& y, double t, double s) {
  require_unit_parameter(t);
  require_unit_parameter(s);
  if (corr.size() * corr.size() > kMaxExactPairs)
    throw Error(ErrorCode::SearchSpaceTooLarge,
                "slices with " + std::to_string(corr.size()) + " points are beyond exact search");
  const auto pullback = std::make_shared<const RectilinearPullback>(corr, x, y);
  const double gh = gh_distance_exact(x, y).value;
  if (std::abs(0.5 * pullback->distortion() - gh) > kOptimalityTolerance)
    throw Error(ErrorCode::NotOptimalCorrespondence,
                "half distortion " + format_number(0.5 * pullback->distortion()) +
                    " differs from d_GH = " + format_number(gh));
  const FiniteMetricSpace rt = GeodesicSlice(pullback, t).to_space();
  const FiniteMetricSpace rs = GeodesicSlice(pullback, s).to_space();
  return {std::abs(t - s) * gh, gh_distance_exact(rt, rs).value};
}

}  // namespace ghr
