#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tsdist/core.hpp"

namespace tsdist {

struct PreprocessOptions {
  /// Fraction of the (deduplicated) series kept from the start, in (0, 1].
  double truncate_fraction = 1.0;
  /// Collapse runs of identical consecutive points.
  bool dedup = false;
  /// Per-dimension zero mean, unit variance after truncation. Constant
  /// dimensions become 0.
  bool z_normalize = false;
};

TimeSeries preprocess(const TimeSeries& t, const PreprocessOptions& opts);
TimeSeries preprocess(const TimeSeries& t, double truncate_fraction, bool dedup);

TimeSeries z_normalize(const TimeSeries& t);

/// Concatenates `parts`, adding offsets[k] to every component of part k.
TimeSeries concat_recipe(std::span<const TimeSeries> parts, std::span<const double> offsets, std::string id = {});

/// `count` contiguous windows of length `window` with uniformly drawn starts.
std::vector<TimeSeries> subsample_windows(const TimeSeries& t, std::size_t window, std::size_t count,
                                          std::uint64_t seed);

/// Clusters of series built from per-cluster bags of segment templates.
///
/// Each template is a smooth oscillation around its own level; levels are
/// spaced `gap_scale` apart, so every seam between two templates is a large
/// discontinuity. A member concatenates one noisy copy of every template
/// of its cluster in a random order. With the defaults (5 segments of 100
/// points) the q = 0.99 threshold cuts exactly at the 4 seams.
struct SyntheticSpec {
  std::size_t k_clusters = 2;
  std::size_t per_cluster = 5;
  std::size_t segment_count = 5;
  std::size_t segment_length = 100;
  std::size_t dim = 1;
  double gap_scale = 10.0;
  double noise_scale = 0.1;
  std::uint64_t seed = 0;
};

LabeledDataset synthetic_cluster_dataset(const SyntheticSpec& spec);

}  // namespace tsdist
