#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <mutex>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tsdist/elastic.hpp"
#include "tsdist/eval.hpp"
#include "tsdist/spd.hpp"

namespace tsdist {
namespace {

using testing::series1d;

const PairwiseDistance kDtw = [](const TimeSeries& a, const TimeSeries& b) { return dtw(a, b); };

DistanceMatrix from_rows(const std::vector<std::vector<double>>& rows) {
  std::vector<std::string> ids;
  std::vector<double> flat;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    ids.push_back("s" + std::to_string(i));
    flat.insert(flat.end(), rows[i].begin(), rows[i].end());
  }
  return DistanceMatrix(ids, flat, "test");
}

std::vector<std::vector<double>> random_dissimilarity(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 10.0);
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = u(rng);
  return d;
}

std::vector<std::string> random_labels(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> k(2, 5);
  const int clusters = k(rng);
  std::uniform_int_distribution<int> pick(0, clusters - 1);
  std::vector<std::string> labels(n);
  labels[0] = "c0";
  labels[1] = "c1";
  for (std::size_t i = 2; i < n; ++i) labels[i] = "c" + std::to_string(pick(rng));
  std::shuffle(labels.begin(), labels.end(), rng);
  return labels;
}

TEST(PairwiseMatrix, IdenticalSeries) {
  const std::vector<TimeSeries> s{series1d({1, 2, 3}, "a"), series1d({1, 2, 3}, "b")};
  const DistanceMatrix m = pairwise_matrix(s, kDtw);
  EXPECT_EQ(m(0, 1), 0.0);
  EXPECT_EQ(m.ids(), (std::vector<std::string>{"a", "b"}));
}

TEST(PairwiseMatrix, MatchesDirectCalls) {
  const std::vector<TimeSeries> s{series1d({0, 1}, "a"), series1d({5, 5, 5}, "b"), series1d({2}, "c")};
  const DistanceMatrix m = pairwise_matrix(s, kDtw, MatrixOptions{2, false, "dtw"});
  EXPECT_EQ(m.algo(), "dtw");
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(m(i, i), 0.0);
    for (std::size_t j = 0; j < 3; ++j)
      if (i != j) EXPECT_EQ(m(i, j), dtw(s[std::min(i, j)], s[std::max(i, j)]));
  }
}

TEST(PairwiseMatrix, EvaluatesEachUnorderedPairOnce) {
  std::vector<TimeSeries> s;
  for (int i = 0; i < 21; ++i) s.push_back(series1d({double(i), double(i) + 1.0}, std::string(1, char('g' + i / 7)) + std::to_string(i)));
  std::atomic<int> calls{0}, same{0}, cross{0};
  std::mutex mu;
  std::set<std::pair<std::string, std::string>> seen;
  const PairwiseDistance counting = [&](const TimeSeries& a, const TimeSeries& b) {
    ++calls;
    (a.id()[0] == b.id()[0] ? same : cross)++;
    std::lock_guard lock(mu);
    seen.insert(std::minmax(a.id(), b.id()));
    return 1.0;
  };
  for (unsigned threads : {1u, 4u}) {
    calls = same = cross = 0;
    seen.clear();
    pairwise_matrix(s, counting, MatrixOptions{threads});
    EXPECT_EQ(calls, 210);
    EXPECT_EQ(seen.size(), 210u);
    // Three groups of seven: 3 * C(7, 2) within, 3 * 7 * 7 across.
    EXPECT_EQ(same, 63);
    EXPECT_EQ(cross, 147);
  }
}

TEST(PairwiseMatrix, FailureNamesThePair) {
  const std::vector<TimeSeries> s{series1d({1}, "left"), series1d({2}, "right"), series1d({3}, "other")};
  const PairwiseDistance picky = [](const TimeSeries& a, const TimeSeries& b) {
    if (a.id() == "left" && b.id() == "right") throw Error("boom");
    return 1.0;
  };
  EXPECT_THROW(pairwise_matrix({series1d({1, 2}, "p"), TimeSeries::from_points({{1, 2}}, "q")}, kDtw),
               DimensionMismatch);
  try {
    pairwise_matrix(s, picky, MatrixOptions{3});
    FAIL() << "expected a failure";
  } catch (const Error& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("left"), std::string::npos) << what;
    EXPECT_NE(what.find("right"), std::string::npos) << what;
  }
}

TEST(PairwiseMatrix, VerifySymmetryRejectsAsymmetricDistances) {
  const std::vector<TimeSeries> s{series1d({1, 2}, "a"), series1d({1, 2, 3}, "b")};
  const PairwiseDistance lopsided = [](const TimeSeries& a, const TimeSeries&) { return double(a.size()); };
  EXPECT_NO_THROW(pairwise_matrix(s, lopsided));
  EXPECT_THROW(pairwise_matrix(s, lopsided, MatrixOptions{1, true}), Error);
  EXPECT_NO_THROW(pairwise_matrix(s, kDtw, MatrixOptions{1, true}));
}

TEST(PairwiseMatrix, SpdVariantsAreSymmetric) {
  std::mt19937_64 rng(31);
  std::vector<TimeSeries> s;
  for (int i = 0; i < 6; ++i) s.push_back(testing::to_series(testing::jumpy_walk(rng, 30 + 7 * i, 2, 0.08), "x" + std::to_string(i)));
  for (const auto& name : standard_algorithm_names()) {
    EXPECT_NO_THROW(pairwise_matrix(s, make_spd_variant(AlgoConfig::from_name(name)), MatrixOptions{2, true}))
        << name;
  }
}

TEST(Silhouette, HandFixture) {
  const DistanceMatrix m = from_rows({{0, 1, 10, 10}, {1, 0, 10, 10}, {10, 10, 0, 1}, {10, 10, 1, 0}});
  const SilhouetteReport r = silhouette(m, {"x", "x", "y", "y"});
  EXPECT_DOUBLE_EQ(r.overall, 0.9);
  EXPECT_EQ(format_si(r.overall), "0.900");
  for (const auto& [id, si] : r.per_series) EXPECT_DOUBLE_EQ(si, 0.9) << id;
  EXPECT_EQ(r.cluster_sizes.at("x"), 2u);
}

TEST(Silhouette, SingletonsAndZeros) {
  const DistanceMatrix m = from_rows({{0, 1, 4}, {1, 0, 4}, {4, 4, 0}});
  const SilhouetteReport r = silhouette(m, {"a", "a", "b"});
  EXPECT_EQ(r.per_series[2].second, 0.0);
  EXPECT_DOUBLE_EQ(r.per_series[0].second, 0.75);
  EXPECT_DOUBLE_EQ(r.overall, 0.5);

  const DistanceMatrix zeros(std::vector<std::string>{"p", "q", "r", "s"}, "");
  EXPECT_EQ(silhouette(zeros, {"a", "a", "b", "b"}).overall, 0.0);
}

TEST(Silhouette, NeedsTwoClustersAndMatchingLabels) {
  const DistanceMatrix m = from_rows({{0, 1}, {1, 0}});
  EXPECT_THROW(silhouette(m, {"a", "a"}), ValidationError);
  EXPECT_THROW(silhouette(m, {"a"}), ValidationError);
}

TEST(Silhouette, MatchesBruteForce) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 29;
    const auto d = random_dissimilarity(rng, n);
    const auto labels = random_labels(rng, n);
    std::vector<double> expect;
    const double overall = testing::brute_silhouette(d, labels, &expect);
    const SilhouetteReport r = silhouette(from_rows(d), labels);
    EXPECT_NEAR(r.overall, overall, 1e-12);
    EXPECT_GE(r.overall, -1.0);
    EXPECT_LE(r.overall, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_NEAR(r.per_series[i].second, expect[i], 1e-12);
      EXPECT_GE(r.per_series[i].second, -1.0);
      EXPECT_LE(r.per_series[i].second, 1.0);
    }
  }
}

TEST(Silhouette, ScaleAndRelabelInvariance) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 4 + trial % 20;
    auto d = random_dissimilarity(rng, n);
    const auto labels = random_labels(rng, n);
    const double base = silhouette(from_rows(d), labels).overall;

    for (auto& row : d)
      for (auto& v : row) v *= 37.5;
    EXPECT_NEAR(silhouette(from_rows(d), labels).overall, base, 1e-12);

    std::vector<std::string> renamed;
    for (const auto& l : labels) renamed.push_back("renamed_" + l + "_z");
    EXPECT_NEAR(silhouette(from_rows(d), renamed).overall, base, 1e-12);
  }
}

TEST(FormatSi, ThreeDecimals) {
  EXPECT_EQ(format_si(0.13949), "0.139");
  EXPECT_EQ(format_si(-0.0001), "0.000");
  EXPECT_EQ(format_si(-0.25), "-0.250");
  EXPECT_EQ(format_si(1.0), "1.000");
}

TEST(RunBenchmark, TableShapeAndOverallRow) {
  LabeledDataset ds;
  ds.series = {series1d({0, 0, 0}, "a"), series1d({0, 0, 1}, "b"), series1d({9, 9, 9}, "c"), series1d({9, 9, 8}, "d")};
  ds.labels = {"lo", "lo", "hi", "hi"};
  const std::vector<AlgoConfig> cfgs{AlgoConfig::from_name("dtw"), AlgoConfig::from_name("sdtw")};
  const BenchmarkTable single = run_benchmark(ds, cfgs, 1);
  ASSERT_EQ(single.rows.size(), 2u);
  EXPECT_EQ(single.rows[0].dataset, "dataset");
  EXPECT_GT(single.rows[0].si, 0.8);

  const BenchmarkTable two = run_benchmark({{"one", ds}, {"two", ds}}, cfgs, 2);
  ASSERT_EQ(two.rows.size(), 6u);
  std::size_t overall = 0;
  for (const auto& row : two.rows)
    if (row.dataset == "Overall") {
      ++overall;
      EXPECT_DOUBLE_EQ(row.si, single.rows[row.algorithm == "dtw" ? 0 : 1].si);
    }
  EXPECT_EQ(overall, 2u);

  std::ostringstream csv, text;
  two.write_csv(csv);
  two.write_text(text);
  EXPECT_EQ(csv.str().rfind("dataset,algorithm,q,g,SI\n", 0), 0u);
  EXPECT_NE(text.str().find("Overall"), std::string::npos);
  EXPECT_NE(text.str().find("sdtw"), std::string::npos);
}

}  // namespace
}  // namespace tsdist
