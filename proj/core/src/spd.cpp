#include "tsdist/spd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tsdist/elastic.hpp"

namespace tsdist {
namespace {

// Slack so that q * m landing a rounding error above an integer does not
// bump the rank (0.7 * 10 evaluates to 7.000000000000001).
constexpr double kRankSlack = 1e-9;

TimeSeries embedded_derivative(SeriesView t) {
  if (t.size() >= 2) return derivative_transform(t);
  return TimeSeries(std::vector<double>(t.dim(), 0.0), t.dim());
}

void check_q(double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw ValidationError("quantile q must lie in [0, 1]");
}

}  // namespace

double quantile_nearest_rank(std::span<const double> distances, double q) {
  check_q(q);
  const std::size_t m = distances.size();
  if (m == 0) return 0.0;
  auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(m) - kRankSlack));
  rank = std::clamp<std::size_t>(rank, 1, m);
  std::vector<double> sorted(distances.begin(), distances.end());
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(rank - 1), sorted.end());
  return sorted[rank - 1];
}

double segmentation_threshold(SeriesView t, double q) {
  const std::vector<double> diffs = consecutive_distances(t);
  return quantile_nearest_rank(diffs, q);
}

SegmentationResult segment(SeriesView t, double threshold, std::string series_id) {
  if (!(threshold >= 0.0)) throw ValidationError("segmentation threshold must be nonnegative");
  SegmentationResult out;
  out.series_id = std::move(series_id);
  out.threshold = threshold;
  const std::vector<double> diffs = consecutive_distances(t);
  std::size_t start = 1;
  for (std::size_t k = 0; k < diffs.size(); ++k) {
    if (diffs[k] > threshold) {
      const std::size_t cut = k + 1;
      out.cut_points.push_back(cut);
      out.segments.push_back({start, cut});
      start = cut + 1;
    }
  }
  out.segments.push_back({start, t.size()});
  return out;
}

SegmentationResult segment(const TimeSeries& t, double threshold) {
  return segment(t.view(), threshold, t.id());
}

MatchingPass greedy_match(const SegmentDistanceMatrix& d) {
  MatchingPass pass;
  std::vector<bool> taken(d.cols(), false);
  pass.assignments.reserve(d.rows());
  for (std::size_t i = 0; i < d.rows(); ++i) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < d.cols(); ++j) {
      if (d(i, j) < d(i, best)) best = j;
    }
    pass.total += d(i, best);
    pass.assignments.push_back(best);
    taken[best] = true;
  }
  for (std::size_t j = 0; j < d.cols(); ++j) {
    if (taken[j]) continue;
    double col_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < d.rows(); ++i) col_min = std::min(col_min, d(i, j));
    pass.total += col_min;
    pass.leftovers.push_back(j);
  }
  return pass;
}

SpdBreakdown spd_distance(const TimeSeries& a, const TimeSeries& b, const SegmentDistance& base,
                          const SpdOptions& opts) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("spd: dimensions " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()) +
                            " differ");
  }
  const double threshold_a = opts.threshold ? *opts.threshold : segmentation_threshold(a, opts.q);
  const double threshold_b = opts.threshold ? *opts.threshold : segmentation_threshold(b, opts.q);

  SpdBreakdown out;
  out.segmentation_a = segment(a, threshold_a);
  out.segmentation_b = segment(b, threshold_b);
  const auto segs_a = out.segmentation_a.views(a);
  const auto segs_b = out.segmentation_b.views(b);

  SegmentDistanceMatrix d(segs_a.size(), segs_b.size());
  for (std::size_t i = 0; i < segs_a.size(); ++i) {
    for (std::size_t j = 0; j < segs_b.size(); ++j) {
      d.set(i, j, base(segs_a[i], segs_b[j]));
    }
  }

  MatchingPass forward = greedy_match(d);
  MatchingPass backward = greedy_match(d.transposed());
  out.dis1 = forward.total;
  out.dis2 = backward.total;
  out.row_assignments = std::move(forward.assignments);
  out.leftover_columns = std::move(forward.leftovers);
  out.column_assignments = std::move(backward.assignments);
  out.leftover_rows = std::move(backward.leftovers);
  out.total_length = a.size() + b.size();
  out.normalized = out.raw() / static_cast<double>(out.total_length);
  out.segment_distances = std::move(d);
  return out;
}

SegmentDistance make_base_distance(const AlgoConfig& cfg, bool embedded) {
  cfg.validate();
  const WeightOptions weights = WeightOptions::from(cfg);
  switch (cfg.base) {
    case BaseAlgorithm::dtw:
      return [](SeriesView x, SeriesView y) { return dtw(x, y); };
    case BaseAlgorithm::cidtw: {
      const auto policy = embedded ? DegenerateComplexityPolicy::unit : DegenerateComplexityPolicy::reject;
      return [policy](SeriesView x, SeriesView y) { return cidtw(x, y, policy); };
    }
    case BaseAlgorithm::ddtw:
      if (embedded) {
        return [](SeriesView x, SeriesView y) { return dtw(embedded_derivative(x), embedded_derivative(y)); };
      }
      return [](SeriesView x, SeriesView y) { return ddtw(x, y); };
    case BaseAlgorithm::wdtw:
      return [weights](SeriesView x, SeriesView y) { return wdtw(x, y, weights); };
    case BaseAlgorithm::wddtw:
      if (embedded) {
        return [weights](SeriesView x, SeriesView y) {
          return wdtw(embedded_derivative(x), embedded_derivative(y), weights);
        };
      }
      return [weights](SeriesView x, SeriesView y) { return wddtw(x, y, weights); };
    case BaseAlgorithm::euclidean_lockstep:
      return [](SeriesView x, SeriesView y) { return euclidean_lockstep(x, y); };
  }
  throw ValidationError("unknown base algorithm");
}

PairwiseDistance make_spd_variant(const AlgoConfig& cfg) {
  cfg.validate();
  if (!cfg.spd_enabled) {
    SegmentDistance base = make_base_distance(cfg, false);
    return [base](const TimeSeries& a, const TimeSeries& b) { return base(a, b); };
  }
  SegmentDistance base = make_base_distance(cfg, true);
  SpdOptions opts{cfg.q, cfg.threshold};
  return [base, opts](const TimeSeries& a, const TimeSeries& b) { return spd_distance(a, b, base, opts).normalized; };
}

DistanceOutcome evaluate_distance(const AlgoConfig& cfg, const TimeSeries& a, const TimeSeries& b) {
  cfg.validate();
  DistanceOutcome out;
  if (!cfg.spd_enabled) {
    out.raw = make_base_distance(cfg, false)(a, b);
    return out;
  }
  SpdBreakdown breakdown = spd_distance(a, b, make_base_distance(cfg, true), SpdOptions{cfg.q, cfg.threshold});
  out.raw = breakdown.raw();
  out.normalized = breakdown.normalized;
  out.breakdown = std::move(breakdown);
  return out;
}

}  // namespace tsdist
