#include "cli.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tsdist/tsdist.hpp"

namespace tsdist::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

/// Raised for flag combinations CLI11 cannot express; maps to exit 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const CLI::Validator kNonNegative(
    [](std::string& s) -> std::string {
      double v = 0.0;
      if (!CLI::detail::lexical_cast(s, v) || !(v >= 0.0)) return "value must be a nonnegative number: " + s;
      return {};
    },
    "NONNEGATIVE");

struct AlgoFlags {
  std::string algo;
  double q = 0.99;
  double g = 0.01;
  double w_max = 1.0;
  std::optional<double> threshold;

  void add_to(CLI::App& cmd, bool with_algo = true) {
    if (with_algo) {
      std::vector<std::string> names = standard_algorithm_names();
      names.emplace_back("euclidean");
      cmd.add_option("--algo", algo, "Distance algorithm")->required()->check(CLI::IsMember(names));
    }
    cmd.add_option("--q", q, "Segmentation quantile for segmented variants")->check(CLI::Range(0.0, 1.0));
    cmd.add_option("--g", g, "Phase penalty of the weighted variants")->check(kNonNegative);
    cmd.add_option("--wmax", w_max, "Weight ceiling of the weighted variants")->check(CLI::PositiveNumber);
    cmd.add_option("--threshold", threshold, "Absolute segmentation threshold (overrides --q; inf disables cuts)")
        ->check(kNonNegative);
  }

  AlgoConfig config(const std::string& name) const {
    AlgoConfig cfg = AlgoConfig::from_name(name);
    cfg.q = q;
    cfg.g = g;
    cfg.w_max = w_max;
    cfg.threshold = threshold;
    cfg.validate();
    return cfg;
  }
};

unsigned threads_from_env() {
  const char* raw = std::getenv("TSDIST_THREADS");
  if (raw == nullptr || *raw == '\0') return 0;
  unsigned v = 0;
  const std::string_view s(raw);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw UsageError("TSDIST_THREADS must be a nonnegative integer, got '" + std::string(s) + "'");
  }
  return v;
}

json ranges_json(const SegmentationResult& seg) {
  json out = json::array();
  for (const auto& r : seg.segments) out.push_back({r.start, r.end});
  return out;
}

json one_based(const std::vector<std::size_t>& indices) {
  json out = json::array();
  for (auto i : indices) out.push_back(i + 1);
  return out;
}

// --- distance -------------------------------------------------------------

int cmd_distance(const AlgoFlags& flags, const std::string& path_a, const std::string& path_b, std::ostream& out) {
  const AlgoConfig cfg = flags.config(flags.algo);
  const TimeSeries a = io::load_series(path_a);
  const TimeSeries b = io::load_series(path_b);
  const DistanceOutcome result = evaluate_distance(cfg, a, b);

  json j;
  j["algorithm"] = cfg.name();
  j["a"] = a.id();
  j["b"] = b.id();
  j["raw"] = result.raw;
  if (result.breakdown) {
    const SpdBreakdown& bd = *result.breakdown;
    j["normalized"] = bd.normalized;
    j["threshold_a"] = bd.segmentation_a.threshold;
    j["threshold_b"] = bd.segmentation_b.threshold;
    j["segments_a"] = ranges_json(bd.segmentation_a);
    j["segments_b"] = ranges_json(bd.segmentation_b);
    j["breakdown"] = {
        {"dis1", bd.dis1},
        {"dis2", bd.dis2},
        {"row_assignments", one_based(bd.row_assignments)},
        {"leftover_columns", one_based(bd.leftover_columns)},
        {"column_assignments", one_based(bd.column_assignments)},
        {"leftover_rows", one_based(bd.leftover_rows)},
        {"total_length", bd.total_length},
    };
  }
  out << j.dump(2) << '\n';
  return kExitOk;
}

// --- matrix ---------------------------------------------------------------

int cmd_matrix(const AlgoFlags& flags, const std::string& out_path, const std::string& dir, std::ostream& out) {
  const AlgoConfig cfg = flags.config(flags.algo);
  const unsigned threads = threads_from_env();
  std::vector<TimeSeries> series = io::load_series_dir(dir);
  if (series.size() < 2) {
    throw Error("matrix: '" + dir + "' holds " + std::to_string(series.size()) + " series, need at least 2");
  }
  MatrixOptions mo;
  mo.threads = threads;
  mo.algo = cfg.fingerprint();
  const DistanceMatrix m = pairwise_matrix(series, make_spd_variant(cfg), mo);
  io::save_matrix(m, out_path);
  json j;
  j["algorithm"] = cfg.name();
  j["series"] = m.size();
  j["pairs"] = m.size() * (m.size() - 1) / 2;
  j["out"] = out_path;
  out << j.dump() << '\n';
  return kExitOk;
}

// --- evaluate -------------------------------------------------------------

int cmd_evaluate(const std::string& matrix_path, const std::string& labels_path, const std::string& format,
                 std::ostream& out) {
  const DistanceMatrix m = io::load_matrix(matrix_path);
  const io::LabelMap labels = io::load_labels(labels_path);
  const std::vector<std::string> per_row = io::labels_for(m.ids(), labels);
  const SilhouetteReport report = silhouette(m, per_row);

  if (format == "csv") {
    out << "series_id,label,si\n";
    for (std::size_t i = 0; i < report.per_series.size(); ++i) {
      out << report.per_series[i].first << ',' << per_row[i] << ',' << io::format_double(report.per_series[i].second)
          << '\n';
    }
    out << "overall,," << format_si(report.overall) << '\n';
  } else {
    std::size_t width = 6;
    for (const auto& [id, si] : report.per_series) width = std::max(width, id.size());
    for (std::size_t i = 0; i < report.per_series.size(); ++i) {
      const auto& [id, si] = report.per_series[i];
      out << id << std::string(width - id.size() + 2, ' ') << per_row[i] << "  " << format_si(si) << '\n';
    }
    out << "clusters:";
    for (const auto& [label, count] : report.cluster_sizes) out << ' ' << label << '=' << count;
    out << '\n' << "overall: " << format_si(report.overall) << '\n';
  }
  return kExitOk;
}

// --- segment --------------------------------------------------------------

int cmd_segment(std::optional<double> q, std::optional<double> threshold, const std::string& path, std::ostream& out) {
  const TimeSeries t = io::load_series(path);
  json j;
  j["series"] = t.id();
  j["n"] = t.size();
  double cut_at = 0.0;
  if (t.size() >= 2) {
    cut_at = threshold ? *threshold : segmentation_threshold(t, q.value_or(0.99));
    j["threshold"] = cut_at;
  }
  const SegmentationResult seg = segment(t, cut_at);
  j["cut_points"] = seg.cut_points;
  j["segments"] = ranges_json(seg);
  out << j.dump(2) << '\n';
  return kExitOk;
}

// --- build-dataset --------------------------------------------------------

struct BuildFlags {
  std::string recipe;
  std::uint64_t seed = 0;
  std::string out_dir;
  // synthetic
  std::size_t k = 2;
  std::size_t per_cluster = 5;
  std::size_t segments = 5;
  std::size_t segment_length = 100;
  std::size_t dim = 1;
  double gap_scale = 10.0;
  double noise_scale = 0.1;
  // concat
  std::vector<std::string> parts;
  std::vector<double> offsets;
  std::size_t window = 0;
  std::size_t count = 1;
  std::string label = "concat";
  // preprocess
  std::string input_dir;
  double truncate = 1.0;
  bool dedup = false;
  bool znorm = false;
};

void write_dataset(const LabeledDataset& ds, const fs::path& dir) {
  fs::create_directories(dir);
  io::LabelMap labels;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    io::save_series(ds.series[i], dir / (ds.series[i].id() + ".csv"));
    labels[ds.series[i].id()] = ds.labels[i];
  }
  io::save_labels(labels, dir / "labels.csv");
}

int cmd_build_dataset(const BuildFlags& f, CLI::App& cmd, std::ostream& out) {
  auto given = [&](const char* flag) { return cmd.count(flag) > 0; };
  LabeledDataset ds;
  if (f.recipe == "synthetic") {
    if (given("--part") || given("--offsets") || given("--input")) {
      throw UsageError("build-dataset: --part/--offsets/--input do not apply to the synthetic recipe");
    }
    SyntheticSpec spec;
    spec.k_clusters = f.k;
    spec.per_cluster = f.per_cluster;
    spec.segment_count = f.segments;
    spec.segment_length = f.segment_length;
    spec.dim = f.dim;
    spec.gap_scale = f.gap_scale;
    spec.noise_scale = f.noise_scale;
    spec.seed = f.seed;
    if (spec.k_clusters == 0 || spec.per_cluster == 0 || spec.segment_count == 0 || spec.segment_length == 0 ||
        spec.dim == 0 || !(spec.gap_scale > 0.0)) {
      throw UsageError("build-dataset: synthetic counts and --gap-scale must be positive");
    }
    ds = synthetic_cluster_dataset(spec);
  } else if (f.recipe == "concat") {
    if (f.parts.empty()) throw UsageError("build-dataset: the concat recipe needs at least one --part");
    if (f.offsets.size() != f.parts.size() && !(f.offsets.empty())) {
      throw UsageError("build-dataset: --offsets needs one value per --part");
    }
    if (f.count == 0) throw UsageError("build-dataset: --count must be positive");
    if (f.count > 1 && f.window == 0) throw UsageError("build-dataset: --count > 1 needs --window");
    if (!io::is_valid_id(f.label)) throw UsageError("build-dataset: --label must match [A-Za-z0-9_-]+");
    std::vector<TimeSeries> parts;
    for (const auto& p : f.parts) parts.push_back(io::load_series(p));
    const std::vector<double> offsets = f.offsets.empty() ? std::vector<double>(parts.size(), 0.0) : f.offsets;
    for (std::size_t c = 0; c < f.count; ++c) {
      std::vector<TimeSeries> pieces;
      for (std::size_t k = 0; k < parts.size(); ++k) {
        if (f.window == 0) {
          pieces.push_back(parts[k]);
        } else {
          // Independent, reproducible stream per (output, part).
          const std::uint64_t stream = f.seed * 1000003ULL + c * 1009ULL + k;
          pieces.push_back(subsample_windows(parts[k], f.window, 1, stream).front());
        }
      }
      char name[32];
      std::snprintf(name, sizeof name, "_%03zu", c);
      ds.series.push_back(concat_recipe(pieces, offsets, f.label + name));
      ds.labels.push_back(f.label);
    }
  } else if (f.recipe == "preprocess") {
    if (f.input_dir.empty()) throw UsageError("build-dataset: the preprocess recipe needs --input DIR");
    if (!(f.truncate > 0.0 && f.truncate <= 1.0)) throw UsageError("build-dataset: --truncate must lie in (0, 1]");
    std::vector<TimeSeries> series = io::load_series_dir(f.input_dir);
    const fs::path labels_path = fs::path(f.input_dir) / "labels.csv";
    for (auto& s : series) s = preprocess(s, PreprocessOptions{f.truncate, f.dedup, f.znorm});
    if (fs::exists(labels_path)) {
      ds = io::attach_labels(std::move(series), io::load_labels(labels_path));
    } else {
      ds.series = std::move(series);
      ds.labels.assign(ds.series.size(), "unlabeled");
    }
  }
  write_dataset(ds, f.out_dir);
  json j;
  j["recipe"] = f.recipe;
  j["series"] = ds.size();
  j["labels"] = ds.distinct_labels();
  j["out"] = f.out_dir;
  out << j.dump() << '\n';
  return kExitOk;
}

// --- benchmark ------------------------------------------------------------

int cmd_benchmark(const AlgoFlags& flags, const std::vector<std::string>& algos, const std::vector<std::string>& dirs,
                  const std::string& format, std::ostream& out) {
  std::vector<AlgoConfig> configs;
  for (const auto& name : algos) configs.push_back(flags.config(name));
  std::vector<NamedDataset> datasets;
  for (const auto& d : dirs) {
    const fs::path dir(d);
    const fs::path labels = dir / "labels.csv";
    const std::string name = (dir.filename().empty() ? dir.parent_path() : dir).filename().string();
    datasets.push_back({name, io::attach_labels(io::load_series_dir(dir), io::load_labels(labels))});
  }
  const BenchmarkTable table = run_benchmark(datasets, configs, threads_from_env());
  if (format == "csv") {
    table.write_csv(out);
  } else {
    table.write_text(out);
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Elastic and segmented distances for time series with large discontinuities", "tsdist"};
  app.require_subcommand(1);

  AlgoFlags dist_flags;
  std::string path_a, path_b;
  auto* distance = app.add_subcommand("distance", "Distance between two series");
  dist_flags.add_to(*distance);
  distance->add_option("A", path_a, "First series CSV")->required();
  distance->add_option("B", path_b, "Second series CSV")->required();

  AlgoFlags matrix_flags;
  std::string matrix_out, matrix_dir;
  auto* matrix = app.add_subcommand("matrix", "Pairwise distance matrix over a directory of series");
  matrix_flags.add_to(*matrix);
  matrix->add_option("--out", matrix_out, "Output matrix CSV")->required();
  matrix->add_option("DIR", matrix_dir, "Directory of series CSVs")->required();

  std::string eval_matrix, eval_labels, eval_format = "text";
  auto* evaluate = app.add_subcommand("evaluate", "Silhouette index of a distance matrix");
  evaluate->add_option("--matrix", eval_matrix, "Matrix CSV")->required();
  evaluate->add_option("--labels", eval_labels, "Labels CSV (id,label)")->required();
  evaluate->add_option("--format", eval_format, "Output format")->check(CLI::IsMember({"csv", "text"}));

  std::optional<double> seg_q, seg_threshold;
  std::string seg_path;
  auto* segment_cmd = app.add_subcommand("segment", "Cut a series at large discontinuities");
  auto* q_opt = segment_cmd->add_option("--q", seg_q, "Quantile of consecutive distances")->check(CLI::Range(0.0, 1.0));
  segment_cmd->add_option("--threshold", seg_threshold, "Absolute threshold")->check(kNonNegative)->excludes(q_opt);
  segment_cmd->add_option("A", seg_path, "Series CSV")->required();

  BuildFlags build;
  auto* build_cmd = app.add_subcommand("build-dataset", "Write a labeled dataset directory");
  build_cmd->add_option("--recipe", build.recipe, "Construction recipe")
      ->required()
      ->check(CLI::IsMember({"concat", "synthetic", "preprocess"}));
  build_cmd->add_option("--seed", build.seed, "Random seed");
  build_cmd->add_option("--out", build.out_dir, "Output directory")->required();
  build_cmd->add_option("--k", build.k, "synthetic: number of clusters");
  build_cmd->add_option("--per-cluster", build.per_cluster, "synthetic: series per cluster");
  build_cmd->add_option("--segments", build.segments, "synthetic: segments per series");
  build_cmd->add_option("--segment-length", build.segment_length, "synthetic: points per segment");
  build_cmd->add_option("--dim", build.dim, "synthetic: point dimension");
  build_cmd->add_option("--gap-scale", build.gap_scale, "synthetic: spacing of segment levels");
  build_cmd->add_option("--noise-scale", build.noise_scale, "synthetic: noise standard deviation")->check(kNonNegative);
  build_cmd->add_option("--part", build.parts, "concat: part series CSV (repeat, in order)");
  build_cmd->add_option("--offsets", build.offsets, "concat: per-part constant offsets")->delimiter(',');
  build_cmd->add_option("--window", build.window, "concat: subsample each part to this length");
  build_cmd->add_option("--count", build.count, "concat: number of series to build");
  build_cmd->add_option("--label", build.label, "concat: label of the built series");
  build_cmd->add_option("--input", build.input_dir, "preprocess: directory of series (and labels.csv)");
  build_cmd->add_option("--truncate", build.truncate, "preprocess: fraction kept from the start");
  build_cmd->add_flag("--dedup", build.dedup, "preprocess: drop repeated consecutive points");
  build_cmd->add_flag("--znorm", build.znorm, "preprocess: z-normalize every dimension");

  AlgoFlags bench_flags;
  std::vector<std::string> bench_algos = standard_algorithm_names();
  std::vector<std::string> bench_dirs;
  std::string bench_format = "text";
  auto* bench = app.add_subcommand("benchmark", "Silhouette index per algorithm per labeled dataset directory");
  bench_flags.add_to(*bench, false);
  bench->add_option("--algos", bench_algos, "Algorithms to compare")->delimiter(',');
  bench->add_option("--format", bench_format, "Output format")->check(CLI::IsMember({"csv", "text"}));
  bench->add_option("DIR", bench_dirs, "Dataset directories, each with labels.csv")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*distance) return cmd_distance(dist_flags, path_a, path_b, out);
    if (*matrix) return cmd_matrix(matrix_flags, matrix_out, matrix_dir, out);
    if (*evaluate) return cmd_evaluate(eval_matrix, eval_labels, eval_format, out);
    if (*segment_cmd) return cmd_segment(seg_q, seg_threshold, seg_path, out);
    if (*build_cmd) return cmd_build_dataset(build, *build_cmd, out);
    if (*bench) {
      for (const auto& name : bench_algos) {
        try {
          (void)AlgoConfig::from_name(name);
        } catch (const ValidationError& e) {
          throw UsageError(e.what());
        }
      }
      return cmd_benchmark(bench_flags, bench_algos, bench_dirs, bench_format, out);
    }
  } catch (const UsageError& e) {
    err << "tsdist: usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "tsdist: error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace tsdist::cli
