#include "ghr/realization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ghr/correspondence.hpp"

namespace ghr {

namespace {

void require_positive_c(double c) {
  if (!(c > 0.0) || !std::isfinite(c))
    throw Error(ErrorCode::NonpositiveC, "c = " + format_number(c) + " must be positive");
}

// The inner minimum of the product metric for two slices.
double bridge(const DistanceMatrix& at_t, const DistanceMatrix& at_s, std::size_t z1,
              std::size_t z2) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t w = 0; w < at_t.size(); ++w) best = std::min(best, at_t(z1, w) + at_s(w, z2));
  return best;
}

std::vector<DistanceMatrix> sample(const InterpolationFamily& family, const ParamGrid& grid) {
  std::vector<DistanceMatrix> out;
  out.reserve(grid.size());
  for (double t : grid.values()) out.push_back(family.dist_at(t));
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Families and grids

InterpolationFamily::InterpolationFamily(std::size_t ground_size, double a, double b,
                                         Evaluator evaluator, std::vector<std::string> labels)
    : ground_size_(ground_size), a_(a), b_(b), evaluator_(std::move(evaluator)),
      labels_(std::move(labels)) {
  if (ground_size_ == 0) throw Error(ErrorCode::InvalidInput, "empty ground set");
  if (!(a_ < b_)) throw Error(ErrorCode::ParameterOutOfRange, "family needs a < b");
  if (labels_.empty())
    for (std::size_t z = 0; z < ground_size_; ++z) labels_.push_back("p" + std::to_string(z));
  if (labels_.size() != ground_size_)
    throw Error(ErrorCode::SizeMismatch, "label count differs from ground set size");
}

InterpolationFamily InterpolationFamily::rectilinear(
    std::shared_ptr<const RectilinearPullback> pullback) {
  const RectilinearPullback& pb = *pullback;
  InterpolationFamily family(
      pb.size(), 0.0, 1.0, [pullback](double t) { return pullback->matrix_at(t); }, pb.labels());
  family.pullback_ = std::move(pullback);
  return family;
}

InterpolationFamily InterpolationFamily::constant(DistanceMatrix dist, double a, double b,
                                                  std::vector<std::string> labels) {
  const std::size_t n = dist.size();
  return InterpolationFamily(
      n, a, b, [dist = std::move(dist)](double) { return dist; }, std::move(labels));
}

InterpolationFamily InterpolationFamily::tabulated(std::vector<double> knots,
                                                   std::vector<DistanceMatrix> values,
                                                   std::vector<std::string> labels) {
  const ParamGrid checked(knots);
  if (values.size() != knots.size())
    throw Error(ErrorCode::SizeMismatch, "one matrix per knot is required");
  const std::size_t n = values.front().size();
  for (const auto& v : values)
    if (v.size() != n) throw Error(ErrorCode::SizeMismatch, "tabulated matrices differ in size");
  const double a = knots.front(), b = knots.back();
  auto eval = [knots = std::move(knots), values = std::move(values)](double t) {
    const auto it = std::lower_bound(knots.begin(), knots.end(), t);
    const auto k = static_cast<std::size_t>(it - knots.begin());
    if (knots[k] == t) return values[k];
    const double w = (t - knots[k - 1]) / (knots[k] - knots[k - 1]);
    const std::size_t size = values[k].size();
    DistanceMatrix out(size);
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = 0; j < size; ++j)
        out(i, j) = (1.0 - w) * values[k - 1](i, j) + w * values[k](i, j);
    return out;
  };
  return InterpolationFamily(n, a, b, std::move(eval), std::move(labels));
}

DistanceMatrix InterpolationFamily::dist_at(double t) const {
  if (!(t >= a_ && t <= b_))
    throw Error(ErrorCode::ParameterOutOfRange, "t = " + format_number(t) + " outside [" +
                                                    format_number(a_) + "," + format_number(b_) +
                                                    "]");
  DistanceMatrix m = evaluator_(t);
  if (m.size() != ground_size_)
    throw Error(ErrorCode::SizeMismatch, "family evaluator returned a matrix of the wrong size");
  return m;
}

ParamGrid::ParamGrid(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) throw Error(ErrorCode::InvalidInput, "a grid needs at least 2 values");
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!std::isfinite(values_[k])) throw Error(ErrorCode::NonFiniteEntry, "grid value");
    if (k > 0 && !(values_[k - 1] < values_[k]))
      throw Error(ErrorCode::InvalidInput, "grid values must be strictly increasing");
  }
}

ParamGrid ParamGrid::uniform(double a, double b, std::size_t count) {
  if (count < 2) throw Error(ErrorCode::InvalidInput, "a grid needs at least 2 values");
  std::vector<double> values(count);
  const double steps = static_cast<double>(count - 1);
  for (std::size_t k = 0; k < count; ++k)
    values[k] = a + (b - a) * (static_cast<double>(k) / steps);
  values.back() = b;
  return ParamGrid(std::move(values));
}

// ---------------------------------------------------------------------------
// Product metric and its hypotheses

double product_distance(const InterpolationFamily& family, double c, ProductPoint p1,
                        ProductPoint p2) {
  require_positive_c(c);
  if (p1.z >= family.ground_size() || p2.z >= family.ground_size())
    throw Error(ErrorCode::IndexOutOfRange, "ground point index out of range");
  const DistanceMatrix at_t = family.dist_at(p1.t);
  const DistanceMatrix at_s = family.dist_at(p2.t);
  return bridge(at_t, at_s, p1.z, p2.z) + c * std::abs(p1.t - p2.t);
}

MonotoneCheck check_monotone_condition(const InterpolationFamily& family, const ParamGrid& grid,
                                       double tol) {
  const auto mats = sample(family, grid);
  const std::size_t n = family.ground_size(), g = grid.size();
  MonotoneCheck worst;
  for (std::size_t z1 = 0; z1 < n; ++z1)
    for (std::size_t z2 = z1 + 1; z2 < n; ++z2) {
      // largest rise f(l) - f(k) and largest drop f(k) - f(l) over k < l
      double rise = 0.0, drop = 0.0;
      std::size_t rise_k = 0, rise_l = 0, drop_k = 0, drop_l = 0;
      std::size_t lo = 0, hi = 0;
      for (std::size_t l = 1; l < g; ++l) {
        const double f = mats[l](z1, z2);
        if (f - mats[lo](z1, z2) > rise) rise = f - mats[lo](z1, z2), rise_k = lo, rise_l = l;
        if (mats[hi](z1, z2) - f > drop) drop = mats[hi](z1, z2) - f, drop_k = hi, drop_l = l;
        if (f < mats[lo](z1, z2)) lo = l;
        if (f > mats[hi](z1, z2)) hi = l;
      }
      const bool use_rise = rise <= drop;
      const double violation = use_rise ? rise : drop;
      if (violation > worst.violation) {
        worst.violation = violation;
        worst.z1 = z1;
        worst.z2 = z2;
        worst.t = grid[use_rise ? rise_k : drop_k];
        worst.s = grid[use_rise ? rise_l : drop_l];
      }
    }
  worst.ok = worst.violation <= tol;
  return worst;
}

LipschitzCheck check_lipschitz_condition(const InterpolationFamily& family, double c,
                                         const ParamGrid& grid, double tol) {
  const auto mats = sample(family, grid);
  const std::size_t n = family.ground_size(), g = grid.size();
  LipschitzCheck worst;
  for (std::size_t z1 = 0; z1 < n; ++z1)
    for (std::size_t z2 = z1 + 1; z2 < n; ++z2)
      for (std::size_t k = 0; k < g; ++k)
        for (std::size_t l = 0; l < g; ++l) {
          if (k == l) continue;
          const double gap = std::abs(grid[k] - grid[l]);
          const double rise = mats[k](z1, z2) - mats[l](z1, z2);
          worst.max_slope = std::max(worst.max_slope, std::abs(rise) / gap);
          const double deficit = rise - 2.0 * c * gap;
          if (deficit > worst.deficit) {
            worst.deficit = deficit;
            worst.z1 = z1;
            worst.z2 = z2;
            worst.t = grid[k];
            worst.s = grid[l];
          }
        }
  worst.ok = worst.deficit <= tol;
  return worst;
}

MonotoneCheck check_monotone_closed_form(const RectilinearPullback&) {
  return MonotoneCheck{};  // affine in t
}

LipschitzCheck check_lipschitz_closed_form(const RectilinearPullback& pullback, double c,
                                           double tol) {
  LipschitzCheck worst;
  bool rising = true;
  for (std::size_t p = 0; p < pullback.size(); ++p)
    for (std::size_t q = p + 1; q < pullback.size(); ++q) {
      const double slope = pullback.target()(p, q) - pullback.source()(p, q);
      if (std::abs(slope) > worst.max_slope) {
        worst.max_slope = std::abs(slope);
        worst.z1 = p;
        worst.z2 = q;
        rising = slope > 0.0;
      }
    }
  // The excess (|slope| - 2c)|t - s| is largest at |t - s| = 1.
  worst.deficit = std::max(0.0, worst.max_slope - 2.0 * c);
  worst.t = rising ? 1.0 : 0.0;
  worst.s = rising ? 0.0 : 1.0;
  worst.ok = worst.deficit <= tol;
  return worst;
}

ConditionReport check_conditions(const InterpolationFamily& family, double c,
                                 const ParamGrid& grid, double tol) {
  ConditionReport report{check_monotone_condition(family, grid, tol),
                         check_lipschitz_condition(family, c, grid, tol), std::nullopt,
                         std::nullopt};
  if (const RectilinearPullback* pb = family.pullback()) {
    report.monotone_closed_form = check_monotone_closed_form(*pb);
    report.lipschitz_closed_form = check_lipschitz_closed_form(*pb, c, tol);
  }
  return report;
}

namespace {

std::string condition_message(const ConditionReport& r) {
  std::string msg;
  if (!r.monotone_ok())
    msg += "monotonicity fails by " + format_number(r.monotone.violation) + " at pair (" +
           std::to_string(r.monotone.z1) + "," + std::to_string(r.monotone.z2) + ")";
  if (!r.lipschitz_ok()) {
    const LipschitzCheck& l = r.lipschitz_closed_form && !r.lipschitz_closed_form->ok
                                  ? *r.lipschitz_closed_form
                                  : r.lipschitz;
    if (!msg.empty()) msg += "; ";
    msg += "slope bound exceeded by " + format_number(l.deficit) + " at pair (" +
           std::to_string(l.z1) + "," + std::to_string(l.z2) + "), t=" + format_number(l.t) +
           ", s=" + format_number(l.s);
  }
  return msg;
}

}  // namespace

ConditionFailedError::ConditionFailedError(ConditionReport report)
    : Error(ErrorCode::ConditionFailed, condition_message(report)), report_(std::move(report)) {}

std::vector<std::size_t> ProductSpace::slice_indices(std::size_t k) const {
  std::vector<std::size_t> out(slice_size());
  for (std::size_t z = 0; z < slice_size(); ++z) out[z] = index(k, z);
  return out;
}

ProductSpace build_product(InterpolationFamily family, double c, ParamGrid grid,
                           const BuildOptions& options) {
  require_positive_c(c);
  if (grid.a() < family.a() || grid.b() > family.b())
    throw Error(ErrorCode::ParameterOutOfRange, "grid leaves the family's parameter range");

  ConditionReport conditions = check_conditions(family, c, grid, options.tol);
  if (!conditions.ok() && !options.force) throw ConditionFailedError(conditions);

  const auto mats = sample(family, grid);
  const std::size_t n = family.ground_size(), g = grid.size();
  std::vector<ProductPoint> points;
  points.reserve(n * g);
  for (std::size_t k = 0; k < g; ++k)
    for (std::size_t z = 0; z < n; ++z) points.push_back({z, grid[k]});

  DistanceMatrix dist(n * g);
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const std::size_t k = i / n, l = j / n;
      const double d = bridge(mats[k], mats[l], points[i].z, points[j].z) +
                       c * std::abs(grid[k] - grid[l]);
      dist(i, j) = dist(j, i) = d;
    }

  const bool forced = !conditions.ok();
  return ProductSpace{std::move(family), c,           std::move(grid), std::move(points),
                      std::move(dist),   std::move(conditions), forced};
}

// ---------------------------------------------------------------------------
// Verification

VerificationReport verify_product(const ProductSpace& product, double tol) {
  VerificationReport r;
  r.tol = tol;
  r.forced = product.forced;
  const DistanceMatrix& d = product.dist;
  const std::size_t total = d.size(), n = product.slice_size(), g = product.grid.size();

  for (std::size_t i = 0; i < total; ++i) {
    if (d(i, i) != 0.0) r.zero_diagonal = false;
    for (std::size_t j = 0; j < total; ++j) {
      if (d(i, j) != d(j, i)) r.symmetric = false;
      if (i != j && d(i, j) == 0.0) r.kind = MetricKind::Pseudometric;
    }
  }

  r.conditions = check_conditions(product.family, product.c, product.grid, tol);

  const TriangleDeficit tri = worst_triangle_deficit(d);
  r.max_triangle_violation = tri.deficit;
  r.triangle_i = tri.i;
  r.triangle_j = tri.j;
  r.triangle_k = tri.k;

  std::vector<std::vector<std::size_t>> slices(g);
  for (std::size_t k = 0; k < g; ++k) slices[k] = product.slice_indices(k);
  r.slice_hausdorff.assign(g, std::vector<double>(g, 0.0));
  for (std::size_t k = 0; k < g; ++k)
    for (std::size_t l = k; l < g; ++l) {
      const double expected = product.c * std::abs(product.grid[k] - product.grid[l]);
      const double h = hausdorff_distance(d, slices[k], slices[l]);
      const double m = set_set_distance(d, slices[k], slices[l]);
      r.slice_hausdorff[k][l] = r.slice_hausdorff[l][k] = h;
      r.slice_hausdorff_max_error = std::max(r.slice_hausdorff_max_error, std::abs(h - expected));
      r.slice_min_distance_max_error =
          std::max(r.slice_min_distance_max_error, std::abs(m - expected));
      for (std::size_t z = 0; z < n; ++z)
        r.fiber_max_error = std::max(
            r.fiber_max_error, std::abs(d(product.index(k, z), product.index(l, z)) - expected));
    }

  for (std::size_t k = 0; k < g; ++k) {
    const DistanceMatrix rho = product.family.dist_at(product.grid[k]);
    for (std::size_t z1 = 0; z1 < n; ++z1)
      for (std::size_t z2 = 0; z2 < n; ++z2)
        r.restriction_max_error =
            std::max(r.restriction_max_error,
                     std::abs(d(product.index(k, z1), product.index(k, z2)) - rho(z1, z2)));
  }
  return r;
}

Realization realize_geodesic(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                             const Correspondence& corr, const ParamGrid& grid,
                             std::optional<double> c_override, const BuildOptions& options) {
  auto pullback = std::make_shared<const RectilinearPullback>(corr, x, y);
  const double dis = pullback->distortion();
  double c = 0.5 * dis;
  if (c_override) {
    require_positive_c(*c_override);
    c = *c_override;
  } else if (dis == 0.0) {
    throw Error(ErrorCode::DegenerateGeodesic,
                "dis R = 0 (isometric spaces); pass an explicit c to build anyway");
  }

  ProductSpace product =
      build_product(InterpolationFamily::rectilinear(pullback), c, grid, options);
  VerificationReport report = verify_product(product, options.tol);

  if (x.size() * y.size() <= kMaxExactPairs) {
    CorollaryCheck cor;
    cor.gh_distance = gh_distance_exact(x, y).value;
    cor.applicable =
        !c_override && std::abs(0.5 * dis - cor.gh_distance) <= kOptimalityTolerance;
    for (std::size_t k = 0; k < grid.size(); ++k)
      for (std::size_t l = 0; l < grid.size(); ++l)
        cor.max_error = std::max(cor.max_error, std::abs(report.slice_hausdorff[k][l] -
                                                         cor.gh_distance *
                                                             std::abs(grid[k] - grid[l])));
    report.corollary = cor;
  }
  return {std::move(product), std::move(report)};
}

}  // namespace ghr
