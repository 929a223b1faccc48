#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tsdist/datagen.hpp"
#include "tsdist/elastic.hpp"
#include "tsdist/eval.hpp"
#include "tsdist/spd.hpp"

namespace tsdist {
namespace {

using testing::series1d;

TEST(Preprocess, Examples) {
  const TimeSeries t = series1d({1, 1, 2, 2, 3}, "t");
  EXPECT_EQ(preprocess(t, 1.0, true).values(), (std::vector<double>{1, 2, 3}));
  EXPECT_EQ(preprocess(t, 1.0, true).id(), "t");

  std::vector<double> ten(10);
  for (int i = 0; i < 10; ++i) ten[i] = i;
  EXPECT_EQ(preprocess(series1d(ten), 0.2, false).values(), (std::vector<double>{0, 1}));
  EXPECT_EQ(preprocess(series1d(ten), 0.25, false).size(), 3u);
  EXPECT_EQ(preprocess(series1d(ten), 0.01, false).size(), 1u);
  EXPECT_EQ(preprocess(t, 1.0, false), t);

  EXPECT_THROW(preprocess(t, 0.0, false), ValidationError);
  EXPECT_THROW(preprocess(t, 1.5, false), ValidationError);
}

TEST(Preprocess, DedupComparesWholePoints) {
  const TimeSeries t = TimeSeries::from_points({{1, 2}, {1, 2}, {1, 3}, {1, 2}});
  EXPECT_EQ(preprocess(t, 1.0, true).points(), (std::vector<Point>{{1, 2}, {1, 3}, {1, 2}}));
}

TEST(ZNormalize, ZeroMeanUnitVariance) {
  const TimeSeries z = z_normalize(TimeSeries::from_points({{1, 5}, {2, 5}, {3, 5}, {6, 5}}));
  double mean = 0.0, var = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) mean += z.point(i)[0];
  mean /= 4.0;
  for (std::size_t i = 0; i < z.size(); ++i) var += (z.point(i)[0] - mean) * (z.point(i)[0] - mean);
  EXPECT_NEAR(mean, 0.0, 1e-12);
  EXPECT_NEAR(var / 4.0, 1.0, 1e-12);
  for (std::size_t i = 0; i < z.size(); ++i) EXPECT_EQ(z.point(i)[1], 0.0);
}

TEST(ConcatRecipe, Examples) {
  const std::vector<TimeSeries> parts{series1d({1, 2}), series1d({1, 2})};
  const std::vector<double> offsets{0, 100};
  const TimeSeries c = concat_recipe(parts, offsets, "c");
  EXPECT_EQ(c.values(), (std::vector<double>{1, 2, 101, 102}));
  EXPECT_EQ(c.id(), "c");

  std::mt19937_64 rng(41);
  std::vector<TimeSeries> four;
  for (int k = 0; k < 4; ++k) four.push_back(testing::to_series(testing::random_points(rng, 500, 3)));
  const std::vector<double> zero(4, 0.0);
  EXPECT_EQ(concat_recipe(four, zero).size(), 2000u);

  EXPECT_THROW(concat_recipe(parts, std::vector<double>{0}), ValidationError);
  EXPECT_THROW(concat_recipe(std::vector<TimeSeries>{series1d({1}), four[0]}, std::vector<double>{0, 0}),
               DimensionMismatch);
}

TEST(ConcatRecipe, OffsetsCreateDetectableSeams) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<TimeSeries> parts;
    for (int k = 0; k < 4; ++k) parts.push_back(testing::to_series(testing::jumpy_walk(rng, 200, 1, 0.0)));
    const std::vector<double> offsets{0, 1000, -1000, 3000};
    const TimeSeries c = concat_recipe(parts, offsets);
    const SegmentationResult seg = segment(c, segmentation_threshold(c, 0.99));
    for (std::size_t seam : {200u, 400u, 600u}) {
      EXPECT_NE(std::find(seg.cut_points.begin(), seg.cut_points.end(), seam), seg.cut_points.end());
    }
  }
}

TEST(SubsampleWindows, DeterministicContiguousWindows) {
  std::vector<double> v(300);
  for (int i = 0; i < 300; ++i) v[i] = i;
  const TimeSeries t = series1d(v, "src");
  const auto w = subsample_windows(t, 50, 6, 9);
  ASSERT_EQ(w.size(), 6u);
  for (std::size_t c = 0; c < w.size(); ++c) {
    ASSERT_EQ(w[c].size(), 50u);
    EXPECT_EQ(w[c].id(), "src_w" + std::to_string(c));
    for (std::size_t i = 1; i < 50; ++i) EXPECT_EQ(w[c].point(i)[0], w[c].point(i - 1)[0] + 1.0);
  }
  const auto again = subsample_windows(t, 50, 6, 9);
  for (std::size_t c = 0; c < w.size(); ++c) EXPECT_EQ(w[c], again[c]);
  EXPECT_EQ(subsample_windows(t, 300, 1, 1).front().values(), v);
  EXPECT_THROW(subsample_windows(t, 301, 1, 1), ValidationError);
  EXPECT_THROW(subsample_windows(t, 0, 1, 1), ValidationError);
}

TEST(SyntheticClusters, ShapeAndDeterminism) {
  SyntheticSpec spec;
  spec.k_clusters = 3;
  spec.per_cluster = 4;
  spec.dim = 2;
  spec.seed = 5;
  const LabeledDataset ds = synthetic_cluster_dataset(spec);
  ASSERT_EQ(ds.size(), 12u);
  EXPECT_EQ(ds.distinct_labels(), 3u);
  EXPECT_EQ(ds.series[0].id(), "c00_m000");
  EXPECT_EQ(ds.labels[0], "cluster0");
  for (const auto& s : ds.series) {
    EXPECT_EQ(s.size(), 500u);
    EXPECT_EQ(s.dim(), 2u);
  }
  const LabeledDataset again = synthetic_cluster_dataset(spec);
  for (std::size_t i = 0; i < ds.size(); ++i) EXPECT_EQ(ds.series[i], again.series[i]);
  spec.seed = 6;
  EXPECT_FALSE(synthetic_cluster_dataset(spec).series[0] == ds.series[0]);
}

TEST(SyntheticClusters, QuantileCutsAtTheSeams) {
  SyntheticSpec spec;
  spec.seed = 8;
  const LabeledDataset ds = synthetic_cluster_dataset(spec);
  for (const auto& s : ds.series) {
    const SegmentationResult seg = segment(s, segmentation_threshold(s, 0.99));
    EXPECT_EQ(seg.cut_points, (std::vector<std::size_t>{100, 200, 300, 400})) << s.id();
  }
}

TEST(SyntheticClusters, NoiselessMembersHaveZeroSegmentedDistance) {
  SyntheticSpec spec;
  spec.noise_scale = 0.0;
  spec.per_cluster = 4;
  spec.seed = 3;
  const LabeledDataset ds = synthetic_cluster_dataset(spec);
  const auto sdtw = make_spd_variant(AlgoConfig::from_name("sdtw"));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) EXPECT_EQ(sdtw(ds.series[i], ds.series[j]), 0.0);
  EXPECT_GT(sdtw(ds.series[0], ds.series[4]), 0.0);
}

TEST(SyntheticClusters, SegmentedBeatsWholeSeriesDtw) {
  SyntheticSpec spec;
  spec.noise_scale = 0.01 * spec.gap_scale;
  spec.per_cluster = 5;
  spec.seed = 12;
  const LabeledDataset ds = synthetic_cluster_dataset(spec);
  const auto sdtw = make_spd_variant(AlgoConfig::from_name("sdtw"));
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i + 1; j < 5; ++j) {
      const auto& a = ds.series[i];
      const auto& b = ds.series[j];
      EXPECT_LT(sdtw(a, b) * double(a.size() + b.size()), dtw(a, b));
    }
  const double si_sdtw = silhouette(pairwise_matrix(ds, sdtw), ds.labels).overall;
  const double si_dtw = silhouette(pairwise_matrix(ds, [](const TimeSeries& a, const TimeSeries& b) {
                                     return dtw(a, b);
                                   }),
                                   ds.labels)
                            .overall;
  EXPECT_GT(si_sdtw, si_dtw);
}

}  // namespace
}  // namespace tsdist
