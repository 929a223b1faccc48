#include "tsdist/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <iomanip>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

namespace tsdist {
namespace {

unsigned resolve_threads(unsigned requested, std::size_t jobs) {
  unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (jobs < n) n = static_cast<unsigned>(std::max<std::size_t>(1, jobs));
  return n;
}

}  // namespace

DistanceMatrix pairwise_matrix(const std::vector<TimeSeries>& series, const PairwiseDistance& dist,
                               const MatrixOptions& opts) {
  const std::size_t n = series.size();
  if (n < 2) throw ValidationError("pairwise matrix: need at least 2 series, got " + std::to_string(n));
  for (const auto& s : series) {
    if (s.dim() != series.front().dim()) {
      throw DimensionMismatch("pairwise matrix: series '" + s.id() + "' has dimension " + std::to_string(s.dim()) +
                              ", expected " + std::to_string(series.front().dim()));
    }
  }

  std::vector<std::string> ids;
  ids.reserve(n);
  for (const auto& s : series) ids.push_back(s.id());

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

  // Each pair owns one slot, so workers never write the same element.
  std::vector<double> results(pairs.size(), 0.0);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::string first_error;

  auto worker = [&] {
    for (;;) {
      if (failed.load(std::memory_order_relaxed)) return;
      const std::size_t k = next.fetch_add(1, std::memory_order_relaxed);
      if (k >= pairs.size()) return;
      const auto [i, j] = pairs[k];
      try {
        const double v = dist(series[i], series[j]);
        if (!std::isfinite(v) || v < 0.0) throw Error("distance is negative or non-finite");
        if (opts.verify_symmetry) {
          const double w = dist(series[j], series[i]);
          if (std::abs(v - w) > DistanceMatrix::kSymmetryTolerance) {
            throw Error("asymmetric distance: " + std::to_string(v) + " vs " + std::to_string(w));
          }
        }
        results[k] = v;
      } catch (const std::exception& e) {
        std::lock_guard lock(error_mutex);
        if (!failed.exchange(true)) {
          first_error = "pair (" + ids[i] + ", " + ids[j] + "): " + e.what();
        }
        return;
      }
    }
  };

  const unsigned workers = resolve_threads(opts.threads, pairs.size());
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  if (failed) throw Error("pairwise matrix: " + first_error);

  DistanceMatrix m(std::move(ids), opts.algo);
  for (std::size_t k = 0; k < pairs.size(); ++k) m.set_pair(pairs[k].first, pairs[k].second, results[k]);
  return m;
}

DistanceMatrix pairwise_matrix(const LabeledDataset& ds, const PairwiseDistance& dist, const MatrixOptions& opts) {
  ds.validate(1);
  return pairwise_matrix(ds.series, dist, opts);
}

SilhouetteReport silhouette(const DistanceMatrix& matrix, const std::vector<std::string>& labels) {
  const std::size_t n = matrix.size();
  if (labels.size() != n) {
    throw ValidationError("silhouette: matrix has " + std::to_string(n) + " rows but " +
                          std::to_string(labels.size()) + " labels were given");
  }

  // Cluster index per series, clusters in order of first appearance.
  std::vector<std::string> names;
  std::vector<std::size_t> cluster(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto it = std::find(names.begin(), names.end(), labels[i]);
    cluster[i] = static_cast<std::size_t>(it - names.begin());
    if (it == names.end()) names.push_back(labels[i]);
  }
  if (names.size() < 2) {
    throw ValidationError("silhouette: need at least 2 clusters, found " + std::to_string(names.size()));
  }
  std::vector<std::size_t> sizes(names.size(), 0);
  for (auto c : cluster) ++sizes[c];

  SilhouetteReport report;
  for (std::size_t c = 0; c < names.size(); ++c) report.cluster_sizes[names[c]] = sizes[c];
  report.per_series.reserve(n);

  std::vector<double> sums(names.size());
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double si = 0.0;
    if (sizes[cluster[i]] > 1) {
      std::fill(sums.begin(), sums.end(), 0.0);
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) sums[cluster[j]] += matrix(i, j);
      }
      const double a = sums[cluster[i]] / static_cast<double>(sizes[cluster[i]] - 1);
      double b = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < names.size(); ++c) {
        if (c != cluster[i]) b = std::min(b, sums[c] / static_cast<double>(sizes[c]));
      }
      const double denom = std::max(a, b);
      si = denom > 0.0 ? (b - a) / denom : 0.0;
    }
    report.per_series.emplace_back(matrix.ids()[i], si);
    total += si;
  }
  report.overall = total / static_cast<double>(n);
  return report;
}

std::string format_si(double si) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", si);
  std::string s(buf);
  if (s == "-0.000") s = "0.000";
  return s;
}

BenchmarkTable run_benchmark(const std::vector<NamedDataset>& datasets, const std::vector<AlgoConfig>& configs,
                             unsigned threads) {
  BenchmarkTable table;
  std::vector<double> sums(configs.size(), 0.0);
  for (const auto& named : datasets) {
    named.data.validate(2);
    for (std::size_t c = 0; c < configs.size(); ++c) {
      const AlgoConfig& cfg = configs[c];
      MatrixOptions mo;
      mo.threads = threads;
      mo.algo = cfg.fingerprint();
      const DistanceMatrix m = pairwise_matrix(named.data.series, make_spd_variant(cfg), mo);
      const double si = silhouette(m, named.data.labels).overall;
      table.rows.push_back({named.name, cfg.name(), cfg.q, cfg.g, si});
      sums[c] += si;
    }
  }
  if (datasets.size() > 1) {
    for (std::size_t c = 0; c < configs.size(); ++c) {
      table.rows.push_back({"Overall", configs[c].name(), configs[c].q, configs[c].g,
                            sums[c] / static_cast<double>(datasets.size())});
    }
  }
  return table;
}

BenchmarkTable run_benchmark(const LabeledDataset& ds, const std::vector<AlgoConfig>& configs, unsigned threads) {
  return run_benchmark(std::vector<NamedDataset>{{"dataset", ds}}, configs, threads);
}

void BenchmarkTable::write_csv(std::ostream& os) const {
  os << "dataset,algorithm,q,g,SI\n";
  for (const auto& r : rows) {
    os << r.dataset << ',' << r.algorithm << ',' << std::setprecision(12) << r.q << ',' << r.g << ','
       << format_si(r.si) << '\n';
  }
}

void BenchmarkTable::write_text(std::ostream& os) const {
  std::vector<std::string> datasets;
  std::vector<std::string> algos;
  for (const auto& r : rows) {
    if (std::find(datasets.begin(), datasets.end(), r.dataset) == datasets.end()) datasets.push_back(r.dataset);
    if (std::find(algos.begin(), algos.end(), r.algorithm) == algos.end()) algos.push_back(r.algorithm);
  }
  std::size_t first_width = 7;
  for (const auto& d : datasets) first_width = std::max(first_width, d.size());
  std::size_t col_width = 7;
  for (const auto& a : algos) col_width = std::max(col_width, a.size());

  os << std::left << std::setw(static_cast<int>(first_width)) << "dataset";
  for (const auto& a : algos) os << "  " << std::right << std::setw(static_cast<int>(col_width)) << a;
  os << '\n';
  for (const auto& d : datasets) {
    os << std::left << std::setw(static_cast<int>(first_width)) << d;
    for (const auto& a : algos) {
      auto it = std::find_if(rows.begin(), rows.end(),
                             [&](const BenchmarkRow& r) { return r.dataset == d && r.algorithm == a; });
      os << "  " << std::right << std::setw(static_cast<int>(col_width)) << (it == rows.end() ? "-" : format_si(it->si));
    }
    os << '\n';
  }
}

}  // namespace tsdist
