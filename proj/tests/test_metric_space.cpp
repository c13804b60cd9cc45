#include <gtest/gtest.h>

#include <random>

#include "ghr/error.hpp"
#include "ghr/metric_space.hpp"
#include "test_support.hpp"

namespace ghr {
namespace {

using testing::line3;
using testing::space_of;

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InvalidInput;
}

TEST(ValidateMetric, OnePointSpace) {
  const auto s = validate_metric(testing::Rows{{0.0}});
  EXPECT_EQ(s.size(), 1u);
  EXPECT_EQ(s.kind(), MetricKind::Metric);
  EXPECT_EQ(s.label(0), "p0");
}

TEST(ValidateMetric, TwoPointSpace) {
  const auto s = validate_metric(testing::Rows{{0, 1}, {1, 0}}, MetricKind::Metric);
  EXPECT_EQ(s.kind(), MetricKind::Metric);
  EXPECT_EQ(s(0, 1), 1.0);
  EXPECT_EQ(s.diameter(), 1.0);
}

TEST(ValidateMetric, ReportsTriangleViolationWithWitness) {
  try {
    validate_metric(testing::Rows{{0, 1, 3}, {1, 0, 1}, {3, 1, 0}});
    FAIL() << "expected TriangleViolation";
  } catch (const TriangleViolationError& e) {
    EXPECT_EQ(e.code(), ErrorCode::TriangleViolation);
    EXPECT_EQ(e.i(), 0u);
    EXPECT_EQ(e.j(), 2u);
    EXPECT_EQ(e.k(), 1u);
    EXPECT_DOUBLE_EQ(e.deficit(), 1.0);
  }
}

TEST(ValidateMetric, TriangleToleranceAbsorbsRounding) {
  const double eps = 1e-12;
  EXPECT_NO_THROW(validate_metric(testing::Rows{{0, 1, 2 + eps}, {1, 0, 1}, {2 + eps, 1, 0}}));
  EXPECT_EQ(code_of([] { validate_metric(testing::Rows{{0, 1, 2.1}, {1, 0, 1}, {2.1, 1, 0}}); }),
            ErrorCode::TriangleViolation);
  EXPECT_NO_THROW(
      validate_metric(testing::Rows{{0, 1, 2.1}, {1, 0, 1}, {2.1, 1, 0}}, MetricKind::Pseudometric, 0.2));
}

TEST(ValidateMetric, RejectsMalformedMatrices) {
  EXPECT_EQ(code_of([] { validate_metric(testing::Rows{{0, 1}, {2, 0}}); }), ErrorCode::AsymmetricMatrix);
  EXPECT_EQ(code_of([] { validate_metric(testing::Rows{{0, -1}, {-1, 0}}); }), ErrorCode::NegativeEntry);
  EXPECT_EQ(code_of([] { validate_metric(testing::Rows{{1, 1}, {1, 0}}); }), ErrorCode::NonzeroDiagonal);
  EXPECT_EQ(code_of([] { validate_metric(testing::Rows{{0, 1}, {1}}); }), ErrorCode::NotSquare);
  EXPECT_EQ(code_of([] { validate_metric(testing::Rows{{0, NAN}, {NAN, 0}}); }), ErrorCode::NonFiniteEntry);
  EXPECT_EQ(code_of([] { validate_metric(std::vector<std::vector<double>>{}); }),
            ErrorCode::InvalidInput);
}

TEST(ValidateMetric, KindIsStrictestThatHolds) {
  const std::vector<std::vector<double>> pseudo{{0, 0, 1}, {0, 0, 1}, {1, 1, 0}};
  EXPECT_EQ(validate_metric(pseudo).kind(), MetricKind::Pseudometric);
  EXPECT_EQ(code_of([&] { validate_metric(pseudo, MetricKind::Metric); }),
            ErrorCode::ZeroOffDiagonal);
  EXPECT_EQ(validate_metric(testing::Rows{{0, 1}, {1, 0}}, MetricKind::Pseudometric).kind(), MetricKind::Metric);
}

TEST(ValidateMetric, CarriesLabelsAndName) {
  const auto s = validate_metric(DistanceMatrix::from_rows({{0, 1}, {1, 0}}), MetricKind::Metric,
                                 1e-9, {"a", "b"}, "pair");
  EXPECT_EQ(s.name(), "pair");
  EXPECT_EQ(s.labels(), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(code_of([] {
              validate_metric(DistanceMatrix::from_rows({{0, 1}, {1, 0}}), MetricKind::Metric,
                              1e-9, {"a"});
            }),
            ErrorCode::SizeMismatch);
}

TEST(WorstTriangleDeficit, ZeroForValidSpaces) {
  const auto d = worst_triangle_deficit(line3().matrix());
  EXPECT_EQ(d.deficit, 0.0);
}

TEST(PointSetDistance, Examples) {
  const auto s = line3();
  EXPECT_EQ(point_set_distance(s, 1, PointSubset(s, {0, 1})), 0.0);
  EXPECT_EQ(point_set_distance(s, 0, PointSubset(s, {2})), 2.0);
  EXPECT_EQ(point_set_distance(s, 0, PointSubset(s, {1, 2})), 1.0);
}

TEST(SetSetDistance, Examples) {
  const auto s = line3();
  EXPECT_EQ(set_set_distance(s, PointSubset(s, {0, 1}), PointSubset(s, {1, 2})), 0.0);
  EXPECT_EQ(set_set_distance(s, PointSubset(s, {0}), PointSubset(s, {2})), 2.0);
  EXPECT_EQ(set_set_distance(s, PointSubset(s, {0, 1}), PointSubset(s, {2})), 1.0);
}

TEST(HausdorffDistance, Examples) {
  const auto s = line3();
  EXPECT_EQ(hausdorff_distance(s, PointSubset(s, {0, 2}), PointSubset(s, {2, 0})), 0.0);
  EXPECT_EQ(hausdorff_distance(s, PointSubset(s, {0}), PointSubset(s, {0, 2})), 2.0);
  EXPECT_EQ(hausdorff_distance(s, PointSubset(s, {0}), PointSubset(s, {2})), 2.0);
}

TEST(PointSubset, RejectsEmptyAndOutOfRange) {
  const auto s = line3();
  EXPECT_EQ(code_of([&] { PointSubset(s, {}); }), ErrorCode::EmptySubset);
  EXPECT_EQ(code_of([&] { PointSubset(s, {0, 3}); }), ErrorCode::IndexOutOfRange);
  EXPECT_EQ(code_of([&] {
              const std::vector<std::size_t> none;
              hausdorff_distance(s.matrix(), none, std::vector<std::size_t>{0});
            }),
            ErrorCode::EmptySubset);
}

TEST(HausdorffDistance, RejectsSubsetsOfAnotherSpace) {
  const auto s = line3();
  const auto t = line3();
  EXPECT_EQ(code_of([&] { hausdorff_distance(s, PointSubset(s, {0}), PointSubset(t, {1})); }),
            ErrorCode::MixedOwners);
  EXPECT_EQ(code_of([&] { set_set_distance(s, PointSubset(t, {0}), PointSubset(s, {1})); }),
            ErrorCode::MixedOwners);
}

TEST(ValidateMetricProperty, AcceptsPlanarPointSets) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 12;
    EXPECT_NO_THROW(validate_metric(testing::planar_distances(n, rng, 10.0), MetricKind::Metric));
  }
}

TEST(HausdorffProperty, MatchesDefinitionAndIsAMetric) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 9;
    const auto rows = testing::planar_distances(n, rng);
    const auto s = space_of(rows);
    const auto ia = testing::random_subset(n, rng);
    const auto ib = testing::random_subset(n, rng);
    const auto ic = testing::random_subset(n, rng);
    const PointSubset a(s, ia), b(s, ib), c(s, ic);

    const double ab = hausdorff_distance(s, a, b);
    EXPECT_EQ(ab, testing::naive_hausdorff(rows, ia, ib));
    EXPECT_EQ(ab, hausdorff_distance(s, b, a));
    EXPECT_GE(ab, set_set_distance(s, a, b));
    EXPECT_EQ(ab == 0.0, std::vector(a.indices().begin(), a.indices().end()) ==
                             std::vector(b.indices().begin(), b.indices().end()));
    EXPECT_LE(ab, hausdorff_distance(s, a, c) + hausdorff_distance(s, c, b) + 1e-9);
  }
}

}  // namespace
}  // namespace ghr
