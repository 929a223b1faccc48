#include "tsdist/elastic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

namespace tsdist {
namespace {

void require_compatible(SeriesView a, SeriesView b, const char* what) {
  if (a.empty() || b.empty()) {
    throw InvalidSeries(std::string(what) + ": series must be nonempty");
  }
  if (a.dim() != b.dim()) {
    throw DimensionMismatch(std::string(what) + ": dimensions " + std::to_string(a.dim()) + " and " +
                            std::to_string(b.dim()) + " differ");
  }
}

// Euclidean distance without the dimension check; callers validate once.
inline double local_distance(const double* x, const double* y, std::size_t dim) noexcept {
  if (dim == 1) return std::abs(x[0] - y[0]);
  double sum = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    const double d = x[k] - y[k];
    sum += d * d;
  }
  return std::sqrt(sum);
}

// Bottom-up evaluation of the warping recursion. `cost(i, j)` is the local
// cost of aligning a_i with b_j (0-based). Rows run over the longer
// sequence so the two rolling buffers hold min(n1, n2) cells.
template <class LocalCost>
double accumulate_warp(std::size_t n1, std::size_t n2, LocalCost&& cost) {
  const bool transposed = n2 > n1;
  const std::size_t rows = transposed ? n2 : n1;
  const std::size_t cols = transposed ? n1 : n2;
  auto at = [&](std::size_t r, std::size_t c) { return transposed ? cost(c, r) : cost(r, c); };

  std::vector<double> prev(cols);
  std::vector<double> cur(cols);
  cur[0] = at(0, 0);
  for (std::size_t c = 1; c < cols; ++c) cur[c] = cur[c - 1] + at(0, c);
  for (std::size_t r = 1; r < rows; ++r) {
    std::swap(prev, cur);
    cur[0] = prev[0] + at(r, 0);
    for (std::size_t c = 1; c < cols; ++c) {
      cur[c] = at(r, c) + std::min({prev[c - 1], prev[c], cur[c - 1]});
    }
  }
  return cur[cols - 1];
}

std::vector<double> phase_weights(std::size_t n1, std::size_t n2, const WeightOptions& opts) {
  const double midpoint = weight_midpoint(n1, n2, opts);
  std::vector<double> w(std::max(n1, n2));
  for (std::size_t p = 0; p < w.size(); ++p) {
    w[p] = mlwf_weight(static_cast<double>(p), midpoint, opts.g, opts.w_max);
  }
  return w;
}

}  // namespace

double dtw(SeriesView a, SeriesView b) {
  require_compatible(a, b, "dtw");
  const double* pa = a.values().data();
  const double* pb = b.values().data();
  const std::size_t dim = a.dim();
  return accumulate_warp(a.size(), b.size(), [=](std::size_t i, std::size_t j) {
    return local_distance(pa + i * dim, pb + j * dim, dim);
  });
}

Alignment dtw_alignment(SeriesView a, SeriesView b) {
  require_compatible(a, b, "dtw");
  const std::size_t n1 = a.size();
  const std::size_t n2 = b.size();
  Alignment out;
  out.cost.rows = n1;
  out.cost.cols = n2;
  out.cost.values.assign(n1 * n2, 0.0);
  auto& D = out.cost.values;
  auto d = [&](std::size_t i, std::size_t j) {
    return local_distance(a.point(i).data(), b.point(j).data(), a.dim());
  };

  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      double best;
      if (i == 0 && j == 0) {
        best = 0.0;
      } else if (i == 0) {
        best = D[j - 1];
      } else if (j == 0) {
        best = D[(i - 1) * n2];
      } else {
        best = std::min({D[(i - 1) * n2 + j - 1], D[(i - 1) * n2 + j], D[i * n2 + j - 1]});
      }
      D[i * n2 + j] = d(i, j) + best;
    }
  }
  out.distance = D[n1 * n2 - 1];

  std::size_t i = n1 - 1;
  std::size_t j = n2 - 1;
  out.path.emplace_back(i, j);
  while (i > 0 || j > 0) {
    if (i == 0) {
      --j;
    } else if (j == 0) {
      --i;
    } else {
      const double diag = D[(i - 1) * n2 + j - 1];
      const double up = D[(i - 1) * n2 + j];
      const double left = D[i * n2 + j - 1];
      if (diag <= up && diag <= left) {
        --i;
        --j;
      } else if (up <= left) {
        --i;
      } else {
        --j;
      }
    }
    out.path.emplace_back(i, j);
  }
  std::reverse(out.path.begin(), out.path.end());
  return out;
}

double complexity_estimate(SeriesView t) {
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < t.size(); ++k) {
    const double d = point_distance(t.point(k), t.point(k + 1));
    sum += d * d;
  }
  return std::sqrt(sum);
}

double correction_factor(SeriesView a, SeriesView b, DegenerateComplexityPolicy policy) {
  const double ce_a = complexity_estimate(a);
  const double ce_b = complexity_estimate(b);
  const double lo = std::min(ce_a, ce_b);
  const double hi = std::max(ce_a, ce_b);
  if (lo == 0.0) {
    if (hi == 0.0 || policy == DegenerateComplexityPolicy::unit) return 1.0;
    throw DegenerateComplexity("cidtw: one series has zero complexity estimate, the other " +
                               std::to_string(hi));
  }
  return hi / lo;
}

double cidtw(SeriesView a, SeriesView b, DegenerateComplexityPolicy policy) {
  require_compatible(a, b, "cidtw");
  const double cf = correction_factor(a, b, policy);
  return dtw(a, b) * cf;
}

TimeSeries derivative_transform(SeriesView t) {
  const std::size_t n = t.size();
  const std::size_t dim = t.dim();
  if (n < 2) {
    throw SeriesTooShort("derivative transform: series too short for derivative (need at least 2 points)");
  }
  std::vector<double> out(n * dim);
  if (n == 2) {
    for (std::size_t k = 0; k < dim; ++k) {
      const double slope = t.point(1)[k] - t.point(0)[k];
      out[k] = slope;
      out[dim + k] = slope;
    }
    return TimeSeries(std::move(out), dim);
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const auto prev = t.point(i - 1);
    const auto here = t.point(i);
    const auto next = t.point(i + 1);
    for (std::size_t k = 0; k < dim; ++k) {
      out[i * dim + k] = ((here[k] - prev[k]) + (next[k] - prev[k]) / 2.0) / 2.0;
    }
  }
  for (std::size_t k = 0; k < dim; ++k) {
    out[k] = out[dim + k];
    out[(n - 1) * dim + k] = out[(n - 2) * dim + k];
  }
  return TimeSeries(std::move(out), dim);
}

double ddtw(SeriesView a, SeriesView b) {
  require_compatible(a, b, "ddtw");
  return dtw(derivative_transform(a), derivative_transform(b));
}

double mlwf_weight(double phase, double midpoint, double g, double w_max) {
  return w_max / (1.0 + std::exp(-g * (phase - midpoint)));
}

WeightOptions WeightOptions::from(const AlgoConfig& cfg) {
  return WeightOptions{cfg.g, cfg.w_max, cfg.midpoint_rule, cfg.fixed_midpoint};
}

double weight_midpoint(std::size_t n1, std::size_t n2, const WeightOptions& opts) {
  if (opts.midpoint_rule == MidpointRule::fixed) return opts.fixed_midpoint;
  const std::size_t longer = std::max(n1, n2);
  return static_cast<double>((longer + 1) / 2);
}

double wdtw(SeriesView a, SeriesView b, const WeightOptions& opts) {
  require_compatible(a, b, "wdtw");
  const std::vector<double> w = phase_weights(a.size(), b.size(), opts);
  const double* pa = a.values().data();
  const double* pb = b.values().data();
  const double* pw = w.data();
  const std::size_t dim = a.dim();
  return accumulate_warp(a.size(), b.size(), [=](std::size_t i, std::size_t j) {
    const std::size_t phase = i > j ? i - j : j - i;
    return pw[phase] * local_distance(pa + i * dim, pb + j * dim, dim);
  });
}

double wddtw(SeriesView a, SeriesView b, const WeightOptions& opts) {
  require_compatible(a, b, "wddtw");
  return wdtw(derivative_transform(a), derivative_transform(b), opts);
}

double euclidean_lockstep(SeriesView a, SeriesView b) {
  require_compatible(a, b, "euclidean");
  if (a.size() != b.size()) {
    throw LengthMismatch("euclidean: lengths " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()) + " differ");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = local_distance(a.point(i).data(), b.point(i).data(), a.dim());
    sum += d * d;
  }
  return std::sqrt(sum);
}

}  // namespace tsdist
