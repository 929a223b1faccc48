#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tsdist/core.hpp"
#include "tsdist/spd.hpp"

namespace tsdist {

struct MatrixOptions {
  /// Worker threads; 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
  /// Also evaluate d(j, i) and reject pairs that disagree beyond
  /// DistanceMatrix::kSymmetryTolerance. Doubles the work.
  bool verify_symmetry = false;
  /// Stored as the matrix's algorithm fingerprint.
  std::string algo;
};

/// Every unordered pair is evaluated exactly once (n(n-1)/2 calls) and
/// mirrored. A failing pair aborts the whole computation with an Error
/// naming both series.
DistanceMatrix pairwise_matrix(const std::vector<TimeSeries>& series, const PairwiseDistance& dist,
                               const MatrixOptions& opts = {});
DistanceMatrix pairwise_matrix(const LabeledDataset& ds, const PairwiseDistance& dist,
                               const MatrixOptions& opts = {});

struct SilhouetteReport {
  std::vector<std::pair<std::string, double>> per_series;
  double overall = 0.0;
  std::map<std::string, std::size_t> cluster_sizes;
};

/// Silhouette index of every series and their mean. `labels[i]` is the
/// cluster of matrix row i. Singletons score 0; so does a series whose
/// within- and nearest-cluster means are both 0.
SilhouetteReport silhouette(const DistanceMatrix& matrix, const std::vector<std::string>& labels);

struct NamedDataset {
  std::string name;
  LabeledDataset data;
};

struct BenchmarkRow {
  std::string dataset;
  std::string algorithm;
  double q = 0.0;
  double g = 0.0;
  double si = 0.0;
};

struct BenchmarkTable {
  std::vector<BenchmarkRow> rows;

  void write_csv(std::ostream& os) const;
  /// Datasets as rows, algorithms as columns, SI to three decimals.
  void write_text(std::ostream& os) const;
};

/// One overall SI per (dataset, config). With more than one dataset an
/// "Overall" row per config holds the mean over datasets.
BenchmarkTable run_benchmark(const std::vector<NamedDataset>& datasets, const std::vector<AlgoConfig>& configs,
                             unsigned threads = 0);
BenchmarkTable run_benchmark(const LabeledDataset& ds, const std::vector<AlgoConfig>& configs,
                             unsigned threads = 0);

/// Fixed three-decimal rendering used in every SI report.
std::string format_si(double si);

}  // namespace tsdist
