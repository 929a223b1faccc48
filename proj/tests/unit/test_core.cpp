#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tsdist/core.hpp"

namespace tsdist {
namespace {

using testing::series1d;

TEST(PointDistance, Examples) {
  EXPECT_EQ(point_distance(std::vector<double>{4}, std::vector<double>{4}), 0.0);
  EXPECT_EQ(point_distance(std::vector<double>{0, 3}, std::vector<double>{4, 0}), 5.0);
  EXPECT_EQ(point_distance(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2, 3}), 0.0);
}

TEST(PointDistance, DimensionMismatchThrows) {
  EXPECT_THROW(point_distance(std::vector<double>{1, 2}, std::vector<double>{1}), DimensionMismatch);
}

TEST(PointDistance, MetricOnRandomTriples) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    auto p = testing::random_points(rng, 3, 1 + trial % 4);
    const double ab = point_distance(p[0], p[1]);
    const double ba = point_distance(p[1], p[0]);
    const double bc = point_distance(p[1], p[2]);
    const double ac = point_distance(p[0], p[2]);
    EXPECT_EQ(ab, ba);
    EXPECT_GT(ab, 0.0);
    EXPECT_EQ(point_distance(p[0], p[0]), 0.0);
    EXPECT_LE(ac, ab + bc + 1e-12);
  }
}

TEST(ConsecutiveDistances, Examples) {
  EXPECT_EQ(consecutive_distances(series1d({4, 5, 6, 1, 2, 3, 7, 8, 9})),
            (std::vector<double>{1, 1, 5, 1, 1, 4, 1, 1}));
  EXPECT_EQ(consecutive_distances(series1d({7, 7, 7})), (std::vector<double>{0, 0}));
  EXPECT_TRUE(consecutive_distances(series1d({5})).empty());
}

TEST(ConsecutiveDistances, LengthAndOffsetInvariance) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> off(-100, 100);
  for (std::size_t n = 1; n < 40; ++n) {
    auto p = testing::random_points(rng, n, 3);
    auto q = p;
    const double c = off(rng);
    for (auto& row : q)
      for (auto& v : row) v += c;
    const auto dp = consecutive_distances(testing::to_series(p));
    const auto dq = consecutive_distances(testing::to_series(q));
    ASSERT_EQ(dp.size(), n - 1);
    for (std::size_t k = 0; k < dp.size(); ++k) EXPECT_NEAR(dp[k], dq[k], 1e-9);
  }
}

TEST(TimeSeries, RejectsInvalidConstruction) {
  EXPECT_THROW(TimeSeries({}, 1), InvalidSeries);
  EXPECT_THROW(TimeSeries({1, 2, 3}, 2), InvalidSeries);
  EXPECT_THROW(TimeSeries({1, 2}, 0), InvalidSeries);
  EXPECT_THROW(series1d({1, std::numeric_limits<double>::quiet_NaN()}), InvalidSeries);
  EXPECT_THROW(series1d({std::numeric_limits<double>::infinity()}), InvalidSeries);
  EXPECT_THROW(TimeSeries::from_points({{1, 2}, {3}}), InvalidSeries);
}

TEST(TimeSeries, PointsAndViews) {
  const TimeSeries t = TimeSeries::from_points({{1, 2}, {3, 4}, {5, 6}}, "s");
  EXPECT_EQ(t.size(), 3u);
  EXPECT_EQ(t.dim(), 2u);
  EXPECT_EQ(t.point(1)[1], 4.0);
  const SeriesView tail = t.view().subview(1, 2);
  EXPECT_EQ(tail.size(), 2u);
  EXPECT_EQ(tail.point(0)[0], 3.0);
  EXPECT_THROW(t.view().subview(2, 2), std::out_of_range);
  EXPECT_EQ(t.points(), (std::vector<Point>{{1, 2}, {3, 4}, {5, 6}}));
}

TEST(DistanceMatrix, Validation) {
  EXPECT_NO_THROW(DistanceMatrix({"a", "b"}, {0, 1, 1, 0}, ""));
  EXPECT_THROW(DistanceMatrix({"a", "b"}, {0, 1, 2, 0}, ""), ValidationError);
  EXPECT_THROW(DistanceMatrix({"a", "b"}, {1, 1, 1, 0}, ""), ValidationError);
  EXPECT_THROW(DistanceMatrix({"a", "b"}, {0, -1, -1, 0}, ""), ValidationError);
  EXPECT_THROW(DistanceMatrix({"a", "b"}, {0, 1, 1}, ""), ValidationError);
  EXPECT_NO_THROW(DistanceMatrix({"a", "b"}, {0, 1, 1 + 1e-10, 0}, ""));
}

TEST(AlgoConfig, NamesRoundTrip) {
  for (const auto& name : standard_algorithm_names()) {
    const AlgoConfig cfg = AlgoConfig::from_name(name);
    EXPECT_EQ(cfg.name(), name);
    EXPECT_EQ(cfg.spd_enabled, name.front() == 's');
  }
  EXPECT_EQ(AlgoConfig::from_name("euclidean").base, BaseAlgorithm::euclidean_lockstep);
  EXPECT_THROW(AlgoConfig::from_name("seuclidean"), ValidationError);
  EXPECT_THROW(AlgoConfig::from_name("fastdtw"), ValidationError);
}

TEST(AlgoConfig, Validation) {
  AlgoConfig cfg;
  cfg.q = 1.5;
  EXPECT_THROW(cfg.validate(), ValidationError);
  cfg.q = 0.5;
  cfg.g = -1;
  EXPECT_THROW(cfg.validate(), ValidationError);
  cfg.g = 0;
  cfg.w_max = 0;
  EXPECT_THROW(cfg.validate(), ValidationError);
  cfg.w_max = 1;
  EXPECT_NO_THROW(cfg.validate());
}

TEST(AlgoConfig, FingerprintCarriesHyperparameters) {
  AlgoConfig cfg = AlgoConfig::from_name("swdtw");
  EXPECT_EQ(cfg.fingerprint(), "swdtw;q=0.99;g=0.01;wmax=1");
  cfg.threshold = 2.0;
  EXPECT_EQ(cfg.fingerprint(), "swdtw;threshold=2;g=0.01;wmax=1");
  EXPECT_EQ(AlgoConfig::from_name("dtw").fingerprint(), "dtw");
}

}  // namespace
}  // namespace tsdist
