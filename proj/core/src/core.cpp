#include "tsdist/core.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace tsdist {

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& what)
    : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

// ---------------------------------------------------------------------------

SeriesView::SeriesView(std::span<const double> values, std::size_t dim) : values_(values), dim_(dim) {
  if (dim == 0 || values.size() % dim != 0) {
    throw InvalidSeries("series view: storage size is not a multiple of the dimension");
  }
}

SeriesView SeriesView::subview(std::size_t first, std::size_t count) const {
  if (first + count > size()) {
    throw std::out_of_range("series view: subrange exceeds series length");
  }
  return SeriesView(values_.subspan(first * dim_, count * dim_), dim_);
}

TimeSeries::TimeSeries(std::vector<double> values, std::size_t dim, std::string id)
    : values_(std::move(values)), dim_(dim), id_(std::move(id)) {
  if (dim_ == 0) {
    throw InvalidSeries("time series '" + id_ + "': dimension must be positive");
  }
  if (values_.empty()) {
    throw InvalidSeries("time series '" + id_ + "': must contain at least one point");
  }
  if (values_.size() % dim_ != 0) {
    throw InvalidSeries("time series '" + id_ + "': ragged storage");
  }
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!std::isfinite(values_[k])) {
      throw InvalidSeries("time series '" + id_ + "': non-finite value at point " +
                          std::to_string(k / dim_ + 1));
    }
  }
}

TimeSeries TimeSeries::from_points(const std::vector<Point>& points, std::string id) {
  if (points.empty()) {
    throw InvalidSeries("time series '" + id + "': must contain at least one point");
  }
  const std::size_t dim = points.front().size();
  std::vector<double> flat;
  flat.reserve(points.size() * dim);
  for (const auto& p : points) {
    if (p.size() != dim) {
      throw InvalidSeries("time series '" + id + "': points have differing dimensions");
    }
    flat.insert(flat.end(), p.begin(), p.end());
  }
  return TimeSeries(std::move(flat), dim, std::move(id));
}

TimeSeries TimeSeries::univariate(std::vector<double> values, std::string id) {
  return TimeSeries(std::move(values), 1, std::move(id));
}

std::vector<Point> TimeSeries::points() const {
  std::vector<Point> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    auto p = point(i);
    out.emplace_back(p.begin(), p.end());
  }
  return out;
}

TimeSeries TimeSeries::with_id(std::string id) const {
  TimeSeries copy = *this;
  copy.id_ = std::move(id);
  return copy;
}

double point_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("point distance: dimensions " + std::to_string(a.size()) + " and " +
                            std::to_string(b.size()) + " differ");
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    sum += d * d;
  }
  return std::sqrt(sum);
}

std::vector<double> consecutive_distances(SeriesView t) {
  std::vector<double> out;
  if (t.size() < 2) return out;
  out.reserve(t.size() - 1);
  for (std::size_t k = 0; k + 1 < t.size(); ++k) {
    out.push_back(point_distance(t.point(k), t.point(k + 1)));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<SeriesView> SegmentationResult::views(SeriesView parent) const {
  std::vector<SeriesView> out;
  out.reserve(segments.size());
  for (const auto& s : segments) {
    out.push_back(parent.subview(s.start - 1, s.length()));
  }
  return out;
}

SegmentDistanceMatrix::SegmentDistanceMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {}

void SegmentDistanceMatrix::set(std::size_t i, std::size_t j, double v) {
  if (!std::isfinite(v) || v < 0.0) {
    throw ValidationError("segment distance matrix: entry must be finite and nonnegative");
  }
  values_[i * cols_ + j] = v;
}

SegmentDistanceMatrix SegmentDistanceMatrix::transposed() const {
  SegmentDistanceMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.values_[j * rows_ + i] = values_[i * cols_ + j];
  return t;
}

DistanceMatrix::DistanceMatrix(std::vector<std::string> ids, std::string algo)
    : ids_(std::move(ids)), values_(ids_.size() * ids_.size(), 0.0), algo_(std::move(algo)) {}

DistanceMatrix::DistanceMatrix(std::vector<std::string> ids, std::vector<double> values, std::string algo)
    : ids_(std::move(ids)), values_(std::move(values)), algo_(std::move(algo)) {
  if (values_.size() != ids_.size() * ids_.size()) {
    throw ValidationError("distance matrix: expected " + std::to_string(ids_.size() * ids_.size()) +
                          " values, got " + std::to_string(values_.size()));
  }
  validate();
}

void DistanceMatrix::set_pair(std::size_t i, std::size_t j, double v) {
  const std::size_t n = ids_.size();
  values_[i * n + j] = v;
  values_[j * n + i] = v;
}

void DistanceMatrix::validate() const {
  const std::size_t n = ids_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if ((*this)(i, i) != 0.0) {
      throw ValidationError("distance matrix: nonzero diagonal at '" + ids_[i] + "'");
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double v = (*this)(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        throw ValidationError("distance matrix: entry (" + ids_[i] + ", " + ids_[j] +
                              ") is negative or non-finite");
      }
      if (j > i && std::abs(v - (*this)(j, i)) > kSymmetryTolerance) {
        throw ValidationError("distance matrix: asymmetric entries for (" + ids_[i] + ", " + ids_[j] + ")");
      }
    }
  }
}

std::size_t LabeledDataset::distinct_labels() const {
  return std::set<std::string>(labels.begin(), labels.end()).size();
}

void LabeledDataset::validate(std::size_t min_labels) const {
  if (labels.size() != series.size()) {
    throw ValidationError("labeled dataset: " + std::to_string(series.size()) + " series but " +
                          std::to_string(labels.size()) + " labels");
  }
  for (const auto& s : series) {
    if (s.dim() != series.front().dim()) {
      throw DimensionMismatch("labeled dataset: series '" + s.id() + "' has dimension " +
                              std::to_string(s.dim()) + ", expected " + std::to_string(series.front().dim()));
    }
  }
  if (distinct_labels() < min_labels) {
    throw ValidationError("labeled dataset: need at least " + std::to_string(min_labels) +
                          " distinct labels, found " + std::to_string(distinct_labels()));
  }
}

// ---------------------------------------------------------------------------

std::string_view to_string(BaseAlgorithm base) {
  switch (base) {
    case BaseAlgorithm::dtw: return "dtw";
    case BaseAlgorithm::cidtw: return "cidtw";
    case BaseAlgorithm::ddtw: return "ddtw";
    case BaseAlgorithm::wdtw: return "wdtw";
    case BaseAlgorithm::wddtw: return "wddtw";
    case BaseAlgorithm::euclidean_lockstep: return "euclidean";
  }
  return "unknown";
}

AlgoConfig AlgoConfig::from_name(std::string_view name) {
  static constexpr BaseAlgorithm kBases[] = {BaseAlgorithm::dtw, BaseAlgorithm::cidtw, BaseAlgorithm::ddtw,
                                             BaseAlgorithm::wdtw, BaseAlgorithm::wddtw,
                                             BaseAlgorithm::euclidean_lockstep};
  AlgoConfig cfg;
  for (auto base : kBases) {
    if (name == to_string(base)) {
      cfg.base = base;
      return cfg;
    }
    // The lock-step baseline has no segmented variant: segment pairs differ in length.
    if (base != BaseAlgorithm::euclidean_lockstep && name.size() > 1 && name.front() == 's' &&
        name.substr(1) == to_string(base)) {
      cfg.base = base;
      cfg.spd_enabled = true;
      return cfg;
    }
  }
  throw ValidationError("unknown algorithm '" + std::string(name) + "'");
}

std::string AlgoConfig::name() const {
  return (spd_enabled ? "s" : "") + std::string(to_string(base));
}

std::string AlgoConfig::fingerprint() const {
  std::ostringstream os;
  os.precision(12);
  os << name();
  if (spd_enabled) {
    if (threshold) {
      os << ";threshold=" << *threshold;
    } else {
      os << ";q=" << q;
    }
  }
  if (base == BaseAlgorithm::wdtw || base == BaseAlgorithm::wddtw) {
    os << ";g=" << g << ";wmax=" << w_max;
    if (midpoint_rule == MidpointRule::fixed) os << ";nc=" << fixed_midpoint;
  }
  return os.str();
}

void AlgoConfig::validate() const {
  if (!(q >= 0.0 && q <= 1.0)) throw ValidationError("q must lie in [0, 1]");
  if (!(g >= 0.0) || !std::isfinite(g)) throw ValidationError("g must be a finite nonnegative number");
  if (!(w_max > 0.0) || !std::isfinite(w_max)) throw ValidationError("w_max must be positive and finite");
  if (threshold && !(*threshold >= 0.0)) throw ValidationError("threshold must be nonnegative");
  if (midpoint_rule == MidpointRule::fixed && !std::isfinite(fixed_midpoint)) {
    throw ValidationError("fixed midpoint must be finite");
  }
  if (spd_enabled && base == BaseAlgorithm::euclidean_lockstep) {
    throw ValidationError("the lock-step baseline has no segmented variant");
  }
}

const std::vector<std::string>& standard_algorithm_names() {
  static const std::vector<std::string> names = {"dtw",  "sdtw",  "cidtw", "scidtw", "ddtw",
                                                 "sddtw", "wdtw", "swdtw", "wddtw",  "swddtw"};
  return names;
}

}  // namespace tsdist
