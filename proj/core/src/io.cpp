#include "tsdist/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string_view>

namespace tsdist::io {
namespace {

namespace fs = std::filesystem;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(trim(line.substr(start)));
      return cells;
    }
    cells.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

std::optional<double> parse_number(std::string_view cell) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  if (cell.empty()) return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc{} || ptr != cell.data() + cell.size()) return std::nullopt;
  return v;
}

// Numbered, nonblank lines with line endings stripped.
struct Line {
  std::size_t number;
  std::string text;
};

std::vector<Line> read_lines(std::istream& in) {
  std::vector<Line> lines;
  std::string text;
  std::size_t number = 0;
  while (std::getline(in, text)) {
    ++number;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (trim(text).empty()) continue;
    lines.push_back({number, std::move(text)});
  }
  return lines;
}

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  return out;
}

void require_id(const std::string& id, const char* what) {
  if (!is_valid_id(id)) {
    throw ValidationError(std::string(what) + ": id '" + id + "' must match [A-Za-z0-9_-]+");
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

bool is_valid_id(const std::string& id) {
  return !id.empty() && std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
  });
}

// ---------------------------------------------------------------------------
// Series

TimeSeries parse_series(std::istream& in, std::string id, const std::string& source) {
  const std::vector<Line> lines = read_lines(in);
  std::size_t first = 0;
  if (!lines.empty()) {
    const auto cells = split(lines.front().text);
    const bool header = std::any_of(cells.begin(), cells.end(), [](std::string_view c) { return !parse_number(c); });
    if (header) first = 1;
  }
  if (first >= lines.size()) throw ParseError(source, lines.empty() ? 1 : lines.back().number, "empty series file");

  std::size_t dim = 0;
  std::vector<double> values;
  for (std::size_t k = first; k < lines.size(); ++k) {
    const auto cells = split(lines[k].text);
    if (dim == 0) {
      dim = cells.size();
    } else if (cells.size() != dim) {
      throw ParseError(source, lines[k].number,
                       "ragged row: expected " + std::to_string(dim) + " columns, found " + std::to_string(cells.size()));
    }
    for (const auto cell : cells) {
      const auto v = parse_number(cell);
      if (!v) throw ParseError(source, lines[k].number, "non-numeric cell '" + std::string(cell) + "'");
      if (!std::isfinite(*v)) throw ParseError(source, lines[k].number, "non-finite value '" + std::string(cell) + "'");
      values.push_back(*v);
    }
  }
  return TimeSeries(std::move(values), dim, std::move(id));
}

TimeSeries load_series(const fs::path& path) {
  auto in = open_input(path);
  return parse_series(in, path.stem().string(), path.string());
}

void save_series(const TimeSeries& t, const fs::path& path) {
  auto out = open_output(path);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto p = t.point(i);
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (k) out << ',';
      out << format_double(p[k]);
    }
    out << '\n';
  }
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

std::vector<TimeSeries> load_series_dir(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error("'" + dir.string() + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto& p = entry.path();
    if (p.extension() == ".csv" && p.filename() != "labels.csv") files.push_back(p);
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.stem().string() < b.stem().string(); });
  std::vector<TimeSeries> out;
  out.reserve(files.size());
  for (const auto& f : files) out.push_back(load_series(f));
  return out;
}

// ---------------------------------------------------------------------------
// Labels

LabelMap parse_labels(std::istream& in, const std::string& source) {
  LabelMap labels;
  const std::vector<Line> lines = read_lines(in);
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const auto cells = split(lines[k].text);
    if (cells.size() != 2 || cells[0].empty() || cells[1].empty()) {
      throw ParseError(source, lines[k].number, "expected two columns: id,label");
    }
    if (k == 0 && cells[0] == "id" && cells[1] == "label") continue;
    const std::string id(cells[0]);
    if (!labels.emplace(id, std::string(cells[1])).second) {
      throw ParseError(source, lines[k].number, "duplicate id '" + id + "'");
    }
  }
  if (labels.empty()) throw ParseError(source, 1, "no labels");
  return labels;
}

LabelMap load_labels(const fs::path& path) {
  auto in = open_input(path);
  return parse_labels(in, path.string());
}

void save_labels(const LabelMap& labels, const fs::path& path) {
  auto out = open_output(path);
  out << "id,label\n";
  for (const auto& [id, label] : labels) {
    require_id(id, "labels");
    if (label.find(',') != std::string::npos || label.empty()) {
      throw ValidationError("labels: label '" + label + "' must be nonempty and contain no comma");
    }
    out << id << ',' << label << '\n';
  }
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

std::vector<std::string> labels_for(const std::vector<std::string>& ids, const LabelMap& labels) {
  std::vector<std::string> out;
  std::vector<std::string> unlabeled;
  std::set<std::string> seen;
  for (const auto& id : ids) {
    seen.insert(id);
    auto it = labels.find(id);
    if (it == labels.end()) {
      unlabeled.push_back(id);
    } else {
      out.push_back(it->second);
    }
  }
  std::vector<std::string> orphan_labels;
  for (const auto& [id, label] : labels) {
    if (!seen.count(id)) orphan_labels.push_back(id);
  }
  if (!unlabeled.empty() || !orphan_labels.empty()) {
    std::string msg = "label/id mismatch;";
    if (!unlabeled.empty()) {
      msg += " series without label:";
      for (const auto& id : unlabeled) msg += " " + id;
      msg += ";";
    }
    if (!orphan_labels.empty()) {
      msg += " labels without series:";
      for (const auto& id : orphan_labels) msg += " " + id;
      msg += ";";
    }
    msg.pop_back();
    throw ValidationError(msg);
  }
  return out;
}

LabeledDataset attach_labels(std::vector<TimeSeries> series, const LabelMap& labels) {
  std::vector<std::string> ids;
  ids.reserve(series.size());
  for (const auto& s : series) ids.push_back(s.id());
  LabeledDataset ds;
  ds.labels = labels_for(ids, labels);
  ds.series = std::move(series);
  return ds;
}

// ---------------------------------------------------------------------------
// Matrices

void write_matrix(const DistanceMatrix& m, std::ostream& out) {
  out << (m.algo().empty() ? std::string("id") : m.algo());
  for (const auto& id : m.ids()) {
    require_id(id, "matrix");
    out << ',' << id;
  }
  out << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << m.ids()[i];
    for (std::size_t j = 0; j < m.size(); ++j) out << ',' << format_double(m(i, j));
    out << '\n';
  }
}

void save_matrix(const DistanceMatrix& m, const fs::path& path) {
  auto out = open_output(path);
  write_matrix(m, out);
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

DistanceMatrix parse_matrix(std::istream& in, const std::string& source) {
  const std::vector<Line> lines = read_lines(in);
  if (lines.empty()) throw ParseError(source, 1, "empty matrix file");
  const auto header = split(lines.front().text);
  if (header.size() < 2) throw ParseError(source, lines.front().number, "matrix header lists no series ids");
  std::vector<std::string> ids;
  for (std::size_t k = 1; k < header.size(); ++k) ids.emplace_back(header[k]);
  const std::size_t n = ids.size();
  if (lines.size() != n + 1) {
    throw ParseError(source, lines.back().number,
                     "expected " + std::to_string(n) + " matrix rows, found " + std::to_string(lines.size() - 1));
  }
  std::vector<double> values;
  values.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    const Line& line = lines[r + 1];
    const auto cells = split(line.text);
    if (cells.size() != n + 1) {
      throw ParseError(source, line.number,
                       "ragged row: expected " + std::to_string(n + 1) + " columns, found " + std::to_string(cells.size()));
    }
    if (cells[0] != ids[r]) {
      throw ParseError(source, line.number, "row id '" + std::string(cells[0]) + "' does not match column id '" + ids[r] + "'");
    }
    for (std::size_t c = 1; c <= n; ++c) {
      const auto v = parse_number(cells[c]);
      if (!v) throw ParseError(source, line.number, "non-numeric cell '" + std::string(cells[c]) + "'");
      values.push_back(*v);
    }
  }
  std::string algo(header[0]);
  if (algo == "id") algo.clear();
  return DistanceMatrix(std::move(ids), std::move(values), std::move(algo));
}

DistanceMatrix load_matrix(const fs::path& path) {
  auto in = open_input(path);
  return parse_matrix(in, path.string());
}

}  // namespace tsdist::io
