#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "tsdist/core.hpp"

namespace tsdist {

/// Full cumulative-cost matrix of one alignment, row-major n1 x n2.
struct CostMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  double operator()(std::size_t i, std::size_t j) const noexcept { return values[i * cols + j]; }
};

/// Alignment with the retained cost matrix and one optimal warping path
/// (0-based index pairs from (0, 0) to (n1 - 1, n2 - 1)).
struct Alignment {
  double distance = 0.0;
  CostMatrix cost;
  std::vector<std::pair<std::size_t, std::size_t>> path;
};

/// Unconstrained DTW with Euclidean local cost, unnormalized.
/// Uses O(min(n1, n2)) working storage.
double dtw(SeriesView a, SeriesView b);

/// Same value as dtw(), keeping the whole matrix and backtracking a path.
Alignment dtw_alignment(SeriesView a, SeriesView b);

/// sqrt of the summed squared distances between consecutive points.
double complexity_estimate(SeriesView t);

enum class DegenerateComplexityPolicy {
  reject,  ///< throw DegenerateComplexity when exactly one estimate is zero
  unit,    ///< use a correction factor of 1 whenever the smaller estimate is zero
};

/// max(CE) / min(CE); 1 when both estimates are zero.
double correction_factor(SeriesView a, SeriesView b,
                         DegenerateComplexityPolicy policy = DegenerateComplexityPolicy::reject);

double cidtw(SeriesView a, SeriesView b,
             DegenerateComplexityPolicy policy = DegenerateComplexityPolicy::reject);

/// Shape-derivative estimate at every index. Interior points average the
/// left difference and half the centred difference; the endpoints copy
/// their neighbours. Two-point series yield the single slope twice.
/// Throws SeriesTooShort for a single point.
TimeSeries derivative_transform(SeriesView t);

double ddtw(SeriesView a, SeriesView b);

/// Modified logistic weight w_max / (1 + exp(-g (phase - midpoint))).
double mlwf_weight(double phase, double midpoint, double g, double w_max);

struct WeightOptions {
  double g = 0.01;
  double w_max = 1.0;
  MidpointRule midpoint_rule = MidpointRule::half_longer;
  double fixed_midpoint = 0.0;

  static WeightOptions from(const AlgoConfig& cfg);
};

/// Logistic midpoint used when aligning sequences of lengths n1 and n2.
double weight_midpoint(std::size_t n1, std::size_t n2, const WeightOptions& opts);

/// DTW whose local cost at (i, j) is scaled by the weight of |i - j|.
double wdtw(SeriesView a, SeriesView b, const WeightOptions& opts = {});

double wddtw(SeriesView a, SeriesView b, const WeightOptions& opts = {});

/// Lock-step Euclidean distance; throws LengthMismatch for unequal lengths.
double euclidean_lockstep(SeriesView a, SeriesView b);

}  // namespace tsdist
