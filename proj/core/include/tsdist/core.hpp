#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tsdist {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

/// A series violated a construction invariant (empty, ragged, non-finite).
class InvalidSeries : public Error {
 public:
  using Error::Error;
};

class SeriesTooShort : public Error {
 public:
  using Error::Error;
};

/// One series has zero complexity estimate while the other does not.
class DegenerateComplexity : public Error {
 public:
  using Error::Error;
};

/// Matrix, dataset or configuration failed validation.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what);

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// ---------------------------------------------------------------------------
// Series
// ---------------------------------------------------------------------------

using Point = std::vector<double>;

/// Non-owning view over `size()` consecutive points of dimension `dim()`,
/// stored row-major. Segments of a series are views into the parent storage.
class SeriesView {
 public:
  SeriesView() = default;
  SeriesView(std::span<const double> values, std::size_t dim);

  std::size_t size() const noexcept { return dim_ == 0 ? 0 : values_.size() / dim_; }
  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return values_.empty(); }

  std::span<const double> point(std::size_t i) const noexcept {
    return values_.subspan(i * dim_, dim_);
  }
  std::span<const double> values() const noexcept { return values_; }

  /// Points [first, first + count), 0-based.
  SeriesView subview(std::size_t first, std::size_t count) const;

 private:
  std::span<const double> values_;
  std::size_t dim_ = 0;
};

/// Ordered sequence of d-dimensional finite points. Immutable once built.
class TimeSeries {
 public:
  /// `values` holds the points row-major; its size must be a positive
  /// multiple of `dim`.
  TimeSeries(std::vector<double> values, std::size_t dim, std::string id = {});

  static TimeSeries from_points(const std::vector<Point>& points, std::string id = {});
  static TimeSeries univariate(std::vector<double> values, std::string id = {});

  std::size_t size() const noexcept { return values_.size() / dim_; }
  std::size_t dim() const noexcept { return dim_; }
  const std::string& id() const noexcept { return id_; }
  const std::vector<double>& values() const noexcept { return values_; }

  std::span<const double> point(std::size_t i) const noexcept {
    return std::span<const double>(values_).subspan(i * dim_, dim_);
  }
  std::vector<Point> points() const;

  SeriesView view() const noexcept { return SeriesView(values_, dim_); }
  operator SeriesView() const noexcept { return view(); }  // NOLINT(google-explicit-constructor)

  TimeSeries with_id(std::string id) const;

  friend bool operator==(const TimeSeries& a, const TimeSeries& b) {
    return a.dim_ == b.dim_ && a.values_ == b.values_ && a.id_ == b.id_;
  }

 private:
  std::vector<double> values_;
  std::size_t dim_;
  std::string id_;
};

/// Euclidean norm of (a - b).
double point_distance(std::span<const double> a, std::span<const double> b);

/// Element k (0-based) is the distance between points k and k+1.
std::vector<double> consecutive_distances(SeriesView t);

// ---------------------------------------------------------------------------
// Segmentation and matrices
// ---------------------------------------------------------------------------

/// Inclusive 1-based index range [start, end].
struct SegmentRange {
  std::size_t start = 1;
  std::size_t end = 1;

  std::size_t length() const noexcept { return end - start + 1; }
  friend bool operator==(const SegmentRange&, const SegmentRange&) = default;
};

struct SegmentationResult {
  std::string series_id;
  double threshold = 0.0;
  /// k means "cut between element k and k+1" (1-based, strictly increasing).
  std::vector<std::size_t> cut_points;
  std::vector<SegmentRange> segments;

  std::size_t segment_count() const noexcept { return segments.size(); }
  std::vector<SeriesView> views(SeriesView parent) const;
};

/// Dense row-major s1 x s2 matrix of finite nonnegative segment-pair distances.
class SegmentDistanceMatrix {
 public:
  SegmentDistanceMatrix() = default;
  SegmentDistanceMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, double v);

  SegmentDistanceMatrix transposed() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

/// Dense symmetric pairwise matrix with zero diagonal over a set of series.
class DistanceMatrix {
 public:
  static constexpr double kSymmetryTolerance = 1e-9;

  DistanceMatrix() = default;
  explicit DistanceMatrix(std::vector<std::string> ids, std::string algo = {});
  DistanceMatrix(std::vector<std::string> ids, std::vector<double> values, std::string algo);

  std::size_t size() const noexcept { return ids_.size(); }
  const std::vector<std::string>& ids() const noexcept { return ids_; }
  const std::string& algo() const noexcept { return algo_; }
  const std::vector<double>& values() const noexcept { return values_; }

  double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * ids_.size() + j]; }
  /// Sets (i, j) and (j, i).
  void set_pair(std::size_t i, std::size_t j, double v);

  /// Throws ValidationError unless symmetric within kSymmetryTolerance,
  /// diagonal exactly 0 and every entry finite and >= 0.
  void validate() const;

 private:
  std::vector<std::string> ids_;
  std::vector<double> values_;
  std::string algo_;
};

struct LabeledDataset {
  std::vector<TimeSeries> series;
  std::vector<std::string> labels;

  std::size_t size() const noexcept { return series.size(); }
  std::size_t distinct_labels() const;
  /// Equal lengths, uniform dimension, and at least `min_labels` distinct labels.
  void validate(std::size_t min_labels = 2) const;
};

// ---------------------------------------------------------------------------
// Algorithm configuration
// ---------------------------------------------------------------------------

enum class BaseAlgorithm { dtw, cidtw, ddtw, wdtw, wddtw, euclidean_lockstep };

/// How the logistic midpoint n_c is chosen for the weighted variants.
enum class MidpointRule {
  half_longer,  ///< ceil(max(n1, n2) / 2) of the two sequences being aligned
  fixed,        ///< AlgoConfig::fixed_midpoint
};

struct AlgoConfig {
  BaseAlgorithm base = BaseAlgorithm::dtw;
  bool spd_enabled = false;
  double q = 0.99;
  /// Absolute segmentation threshold applied to both series instead of the
  /// quantile rule. +inf disables cutting.
  std::optional<double> threshold;
  double g = 0.01;
  double w_max = 1.0;
  MidpointRule midpoint_rule = MidpointRule::half_longer;
  double fixed_midpoint = 0.0;

  /// Parses "dtw", "sdtw", "scidtw", ... , "euclidean".
  static AlgoConfig from_name(std::string_view name);

  /// Short name, e.g. "swdtw".
  std::string name() const;
  /// Name plus every hyperparameter that affects the result.
  std::string fingerprint() const;
  void validate() const;
};

std::string_view to_string(BaseAlgorithm base);

/// The ten algorithm names: five bases and their segmented variants.
const std::vector<std::string>& standard_algorithm_names();

}  // namespace tsdist
