#include "tsdist/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

namespace tsdist {

TimeSeries preprocess(const TimeSeries& t, const PreprocessOptions& opts) {
  if (!(opts.truncate_fraction > 0.0 && opts.truncate_fraction <= 1.0)) {
    throw ValidationError("preprocess: truncate fraction must lie in (0, 1]");
  }
  const std::size_t dim = t.dim();
  std::vector<double> kept;
  kept.reserve(t.values().size());
  std::size_t n = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto p = t.point(i);
    if (opts.dedup && n > 0 && std::equal(p.begin(), p.end(), kept.end() - static_cast<std::ptrdiff_t>(dim))) {
      continue;
    }
    kept.insert(kept.end(), p.begin(), p.end());
    ++n;
  }
  const auto keep = static_cast<std::size_t>(std::ceil(opts.truncate_fraction * static_cast<double>(n) - 1e-9));
  if (keep == 0) throw InvalidSeries("preprocess: series '" + t.id() + "' is empty after truncation");
  kept.resize(keep * dim);
  TimeSeries out(std::move(kept), dim, t.id());
  return opts.z_normalize ? z_normalize(out) : out;
}

TimeSeries preprocess(const TimeSeries& t, double truncate_fraction, bool dedup) {
  return preprocess(t, PreprocessOptions{truncate_fraction, dedup, false});
}

TimeSeries z_normalize(const TimeSeries& t) {
  const std::size_t n = t.size();
  const std::size_t dim = t.dim();
  std::vector<double> out = t.values();
  for (std::size_t k = 0; k < dim; ++k) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += out[i * dim + k];
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) var += (out[i * dim + k] - mean) * (out[i * dim + k] - mean);
    const double sd = std::sqrt(var / static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
      out[i * dim + k] = sd > 0.0 ? (out[i * dim + k] - mean) / sd : 0.0;
    }
  }
  return TimeSeries(std::move(out), dim, t.id());
}

TimeSeries concat_recipe(std::span<const TimeSeries> parts, std::span<const double> offsets, std::string id) {
  if (parts.empty()) throw ValidationError("concat: no parts given");
  if (parts.size() != offsets.size()) {
    throw ValidationError("concat: " + std::to_string(parts.size()) + " parts but " +
                          std::to_string(offsets.size()) + " offsets");
  }
  const std::size_t dim = parts.front().dim();
  std::vector<double> out;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (parts[k].dim() != dim) {
      throw DimensionMismatch("concat: part " + std::to_string(k + 1) + " has dimension " +
                              std::to_string(parts[k].dim()) + ", expected " + std::to_string(dim));
    }
    for (double v : parts[k].values()) out.push_back(v + offsets[k]);
  }
  return TimeSeries(std::move(out), dim, std::move(id));
}

std::vector<TimeSeries> subsample_windows(const TimeSeries& t, std::size_t window, std::size_t count,
                                          std::uint64_t seed) {
  if (window == 0 || window > t.size()) {
    throw ValidationError("subsample: window " + std::to_string(window) + " does not fit series of length " +
                          std::to_string(t.size()));
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> start_dist(0, t.size() - window);
  std::vector<TimeSeries> out;
  out.reserve(count);
  const auto& v = t.values();
  for (std::size_t c = 0; c < count; ++c) {
    const std::size_t start = start_dist(rng);
    std::vector<double> w(v.begin() + static_cast<std::ptrdiff_t>(start * t.dim()),
                          v.begin() + static_cast<std::ptrdiff_t>((start + window) * t.dim()));
    out.emplace_back(std::move(w), t.dim(), t.id() + "_w" + std::to_string(c));
  }
  return out;
}

namespace {

struct Template {
  std::vector<double> values;  // segment_length x dim
};

std::string padded(std::size_t v, std::size_t width) {
  std::string s = std::to_string(v);
  return std::string(width > s.size() ? width - s.size() : 0, '0') + s;
}

}  // namespace

LabeledDataset synthetic_cluster_dataset(const SyntheticSpec& spec) {
  if (spec.k_clusters == 0 || spec.per_cluster == 0 || spec.segment_count == 0 || spec.segment_length == 0 ||
      spec.dim == 0) {
    throw ValidationError("synthetic dataset: all counts must be positive");
  }
  if (!(spec.gap_scale > 0.0) || !(spec.noise_scale >= 0.0)) {
    throw ValidationError("synthetic dataset: gap scale must be positive and noise scale nonnegative");
  }
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> amplitude(0.10, 0.25);
  std::uniform_real_distribution<double> cycles(0.5, 3.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::normal_distribution<double> noise(0.0, 1.0);

  const std::size_t L = spec.segment_length;
  const std::size_t grid = spec.segment_count + 2;
  std::vector<std::size_t> levels(grid);

  LabeledDataset ds;
  for (std::size_t c = 0; c < spec.k_clusters; ++c) {
    std::iota(levels.begin(), levels.end(), std::size_t{0});
    std::shuffle(levels.begin(), levels.end(), rng);

    std::vector<Template> bag(spec.segment_count);
    for (std::size_t s = 0; s < spec.segment_count; ++s) {
      const double level = static_cast<double>(levels[s]) * spec.gap_scale;
      bag[s].values.resize(L * spec.dim);
      for (std::size_t k = 0; k < spec.dim; ++k) {
        const double amp = amplitude(rng) * spec.gap_scale;
        const double freq = 2.0 * std::numbers::pi * cycles(rng) / static_cast<double>(L);
        const double ph = phase(rng);
        for (std::size_t i = 0; i < L; ++i) {
          bag[s].values[i * spec.dim + k] = level + amp * std::sin(freq * static_cast<double>(i) + ph);
        }
      }
    }

    std::vector<std::size_t> order(spec.segment_count);
    for (std::size_t m = 0; m < spec.per_cluster; ++m) {
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::shuffle(order.begin(), order.end(), rng);
      std::vector<double> values;
      values.reserve(spec.segment_count * L * spec.dim);
      for (std::size_t s : order) {
        for (double v : bag[s].values) {
          values.push_back(spec.noise_scale > 0.0 ? v + spec.noise_scale * noise(rng) : v);
        }
      }
      ds.series.emplace_back(std::move(values), spec.dim, "c" + padded(c, 2) + "_m" + padded(m, 3));
      ds.labels.push_back("cluster" + std::to_string(c));
    }
  }
  return ds;
}

}  // namespace tsdist
