#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "tsdist/core.hpp"

namespace tsdist::io {

// CSV dialect throughout: comma separated, LF or CRLF line endings, no
// quoting. Numbers are written in the shortest form that reads back to the
// identical double.

/// One row per time step, one column per dimension. A first row with any
/// non-numeric cell is taken as a header. The series id is the file stem.
TimeSeries load_series(const std::filesystem::path& path);
TimeSeries parse_series(std::istream& in, std::string id, const std::string& source = "<stream>");
void save_series(const TimeSeries& t, const std::filesystem::path& path);

/// Every *.csv in `dir` except labels.csv, sorted by id.
std::vector<TimeSeries> load_series_dir(const std::filesystem::path& dir);

using LabelMap = std::map<std::string, std::string>;

/// Two columns id,label; an optional "id,label" header row is skipped.
LabelMap load_labels(const std::filesystem::path& path);
LabelMap parse_labels(std::istream& in, const std::string& source = "<stream>");
void save_labels(const LabelMap& labels, const std::filesystem::path& path);

/// Pairs series with labels by id. Series without a label and labels
/// without a series are both errors, reported together.
LabeledDataset attach_labels(std::vector<TimeSeries> series, const LabelMap& labels);
std::vector<std::string> labels_for(const std::vector<std::string>& ids, const LabelMap& labels);

/// Square CSV: the header row and first column carry the series ids; the
/// top-left cell carries the algorithm fingerprint (or "id").
void save_matrix(const DistanceMatrix& m, const std::filesystem::path& path);
void write_matrix(const DistanceMatrix& m, std::ostream& out);
DistanceMatrix load_matrix(const std::filesystem::path& path);
DistanceMatrix parse_matrix(std::istream& in, const std::string& source = "<stream>");

/// Shortest round-trip decimal form.
std::string format_double(double v);

/// True when `id` is nonempty and uses only [A-Za-z0-9_-].
bool is_valid_id(const std::string& id);

}  // namespace tsdist::io
