#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "tsdist/core.hpp"

namespace tsdist {

/// Distance between two (sub)sequences of equal dimension.
using SegmentDistance = std::function<double(SeriesView, SeriesView)>;

/// Distance between two whole series; the unit consumed by pairwise_matrix.
using PairwiseDistance = std::function<double(const TimeSeries&, const TimeSeries&)>;

/// Nearest-rank q-quantile of `distances`: the element at 1-based rank
/// ceil(q * m) of the ascending sort (rank clamped to [1, m]).
/// Returns 0 for an empty sequence.
double quantile_nearest_rank(std::span<const double> distances, double q);

/// Quantile of the series' consecutive distances. A single-point series has
/// no consecutive pairs and yields 0 (it is never cut).
double segmentation_threshold(SeriesView t, double q);

/// Cuts between k and k+1 exactly where the consecutive distance is
/// strictly greater than `threshold`.
SegmentationResult segment(SeriesView t, double threshold, std::string series_id = {});
SegmentationResult segment(const TimeSeries& t, double threshold);

struct SpdOptions {
  double q = 0.99;
  /// Absolute threshold used for both series instead of the per-series
  /// quantile. +inf leaves both series whole.
  std::optional<double> threshold;
};

/// One directional pass of the greedy matching over a segment-pair matrix.
struct MatchingPass {
  double total = 0.0;
  /// Per row, the column holding the row minimum (lowest index on ties).
  std::vector<std::size_t> assignments;
  /// Columns never chosen by any row, each contributing its column minimum.
  std::vector<std::size_t> leftovers;
};

/// Row minima, then the minima of the columns no row picked.
MatchingPass greedy_match(const SegmentDistanceMatrix& d);

struct SpdBreakdown {
  double dis1 = 0.0;
  double dis2 = 0.0;
  /// Dis1 pass: rows are segments of `a`, columns segments of `b`.
  std::vector<std::size_t> row_assignments;
  std::vector<std::size_t> leftover_columns;
  /// Dis2 pass over the transpose: rows are segments of `b`.
  std::vector<std::size_t> column_assignments;
  std::vector<std::size_t> leftover_rows;
  /// min(dis1, dis2) / (n1 + n2).
  double normalized = 0.0;
  std::size_t total_length = 0;
  SegmentationResult segmentation_a;
  SegmentationResult segmentation_b;
  SegmentDistanceMatrix segment_distances;

  double raw() const noexcept { return dis1 < dis2 ? dis1 : dis2; }
};

SpdBreakdown spd_distance(const TimeSeries& a, const TimeSeries& b, const SegmentDistance& base,
                          const SpdOptions& opts = {});

/// Base distance of `cfg` as applied to one pair of (sub)sequences.
/// `embedded` selects the per-segment semantics used inside the combinator:
/// zero-complexity segments get a unit correction factor and single-point
/// segments differentiate to a zero slope.
SegmentDistance make_base_distance(const AlgoConfig& cfg, bool embedded = false);

/// The configured algorithm as a whole-series distance. Segmented variants
/// return the normalized value.
PairwiseDistance make_spd_variant(const AlgoConfig& cfg);

struct DistanceOutcome {
  /// Base distance, or min(Dis1, Dis2) for segmented variants.
  double raw = 0.0;
  std::optional<double> normalized;
  std::optional<SpdBreakdown> breakdown;
};

/// Like make_spd_variant but keeps the breakdown of segmented variants.
DistanceOutcome evaluate_distance(const AlgoConfig& cfg, const TimeSeries& a, const TimeSeries& b);

}  // namespace tsdist
