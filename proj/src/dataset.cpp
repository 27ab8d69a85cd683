#include "driftmeter/dataset.hpp"

#include "driftmeter/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace driftmeter {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

// Comma split with RFC 4180 style double quotes.
std::vector<std::string> split_record(std::string_view line) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                current.push_back('"');
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                current.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back(trim(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    fields.emplace_back(trim(current));
    return fields;
}

std::optional<double> parse_double(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
        return std::nullopt;
    return v;
}

std::optional<TimeLabel> parse_time(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    TimeLabel v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
    return v;
}

std::size_t column_index(const std::vector<std::string>& header, const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw Error(ErrorKind::MissingColumn, "column '" + name + "' not in header");
    return static_cast<std::size_t>(it - header.begin());
}

} // namespace

TemporalDataset::TemporalDataset(std::vector<std::string> item_ids, std::vector<TimeLabel> time_points,
                                 std::vector<std::string> feature_names, std::vector<double> values)
    : item_ids_(std::move(item_ids)),
      time_points_(std::move(time_points)),
      feature_names_(std::move(feature_names)),
      values_(std::move(values)) {
    if (item_ids_.size() < 2) throw Error(ErrorKind::InvalidConfig, "dataset needs at least 2 items");
    if (time_points_.size() < 2) throw Error(ErrorKind::InvalidConfig, "dataset needs at least 2 time points");
    if (feature_names_.empty()) throw Error(ErrorKind::InvalidConfig, "dataset needs at least 1 feature");
    if (values_.size() != item_ids_.size() * time_points_.size() * feature_names_.size())
        throw Error(ErrorKind::InvalidConfig, "value array does not match items x time points x features");
    if (!std::is_sorted(time_points_.begin(), time_points_.end()) ||
        std::adjacent_find(time_points_.begin(), time_points_.end()) != time_points_.end())
        throw Error(ErrorKind::InvalidConfig, "time points must be strictly increasing");
    std::unordered_set<std::string> seen;
    for (const auto& id : item_ids_)
        if (!seen.insert(id).second) throw Error(ErrorKind::InvalidConfig, "duplicate item id '" + id + "'");
    for (double v : values_)
        if (!std::isfinite(v)) throw Error(ErrorKind::InvalidConfig, "non-finite value in dataset");
}

std::size_t TemporalDataset::time_index(TimeLabel t) const {
    const auto it = std::lower_bound(time_points_.begin(), time_points_.end(), t);
    if (it == time_points_.end() || *it != t)
        throw Error(ErrorKind::UnknownTimePoint, "time point " + std::to_string(t) + " not in dataset");
    return static_cast<std::size_t>(it - time_points_.begin());
}

TimeSlice TemporalDataset::slice(TimeLabel t) const { return slice_at(time_index(t)); }

TimeSlice TemporalDataset::slice_at(std::size_t ti) const {
    if (ti >= n_time_points())
        throw Error(ErrorKind::UnknownTimePoint, "time index " + std::to_string(ti) + " out of range");
    TimeSlice s{item_ids_, Matrix(n_items(), n_features()), time_points_[ti]};
    for (std::size_t i = 0; i < n_items(); ++i)
        for (std::size_t f = 0; f < n_features(); ++f) s.matrix(i, f) = value(i, ti, f);
    return s;
}

bool natural_less(const std::string& a, const std::string& b) {
    std::size_t i = 0, j = 0;
    auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
    while (i < a.size() && j < b.size()) {
        if (is_digit(a[i]) && is_digit(b[j])) {
            std::size_t ie = i, je = j;
            while (ie < a.size() && is_digit(a[ie])) ++ie;
            while (je < b.size() && is_digit(b[je])) ++je;
            // compare digit runs ignoring leading zeros, then by length of the raw run
            std::size_t is = i, js = j;
            while (is + 1 < ie && a[is] == '0') ++is;
            while (js + 1 < je && b[js] == '0') ++js;
            const std::size_t la = ie - is, lb = je - js;
            if (la != lb) return la < lb;
            const int cmp = a.compare(is, la, b, js, lb);
            if (cmp != 0) return cmp < 0;
            if (ie - i != je - j) return ie - i < je - j;
            i = ie;
            j = je;
        } else {
            if (a[i] != b[j]) return a[i] < b[j];
            ++i;
            ++j;
        }
    }
    return a.size() - i < b.size() - j;
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

TemporalDataset ingest_csv(std::istream& in, const CsvSchema& schema) {
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorKind::MissingColumn, "empty input, no header row");
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    const auto header = split_record(line);

    const std::size_t id_col = column_index(header, schema.id_column);
    const std::size_t time_col = column_index(header, schema.time_column);
    if (schema.feature_columns.empty()) throw Error(ErrorKind::MissingColumn, "no feature columns selected");
    std::vector<std::size_t> feature_cols;
    for (const auto& name : schema.feature_columns) feature_cols.push_back(column_index(header, name));

    const std::size_t nf = feature_cols.size();
    std::map<std::pair<std::string, TimeLabel>, std::vector<double>> rows;
    std::set<TimeLabel> times;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_record(line);
        if (fields.size() != header.size())
            throw Error(ErrorKind::NonNumericCell, "line " + std::to_string(line_no) + " has " +
                                                       std::to_string(fields.size()) + " fields, header has " +
                                                       std::to_string(header.size()));
        const auto t = parse_time(fields[time_col]);
        if (!t)
            throw Error(ErrorKind::NonNumericCell, "line " + std::to_string(line_no) + ", column '" +
                                                       schema.time_column + "': '" + fields[time_col] +
                                                       "' is not an integer");
        std::vector<double> obs(nf);
        for (std::size_t f = 0; f < nf; ++f) {
            const auto v = parse_double(fields[feature_cols[f]]);
            if (!v)
                throw Error(ErrorKind::NonNumericCell, "line " + std::to_string(line_no) + ", column '" +
                                                           schema.feature_columns[f] + "': '" +
                                                           fields[feature_cols[f]] + "' is not a finite number");
            obs[f] = *v;
        }
        const auto& id = fields[id_col];
        if (!rows.emplace(std::make_pair(id, *t), std::move(obs)).second)
            throw Error(ErrorKind::DuplicateObservation,
                        "item '" + id + "' has more than one row at time " + std::to_string(*t));
        times.insert(*t);
    }

    std::vector<std::string> ids;
    for (const auto& [key, obs] : rows)
        if (ids.empty() || ids.back() != key.first) ids.push_back(key.first);
    std::sort(ids.begin(), ids.end(), natural_less);
    std::vector<TimeLabel> time_points(times.begin(), times.end());

    std::vector<double> values;
    values.reserve(ids.size() * time_points.size() * nf);
    for (const auto& id : ids) {
        for (TimeLabel t : time_points) {
            const auto it = rows.find({id, t});
            if (it == rows.end())
                throw Error(ErrorKind::UnbalancedPanel,
                            "item '" + id + "' has no observation at time " + std::to_string(t));
            values.insert(values.end(), it->second.begin(), it->second.end());
        }
    }
    return TemporalDataset(std::move(ids), std::move(time_points), schema.feature_columns, std::move(values));
}

TemporalDataset ingest_csv(const std::filesystem::path& path, const CsvSchema& schema) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
    return ingest_csv(in, schema);
}

void write_csv(const TemporalDataset& ds, std::ostream& out, const std::string& id_column,
               const std::string& time_column) {
    out << id_column << ',' << time_column;
    for (const auto& f : ds.feature_names()) out << ',' << f;
    out << '\n';
    for (std::size_t i = 0; i < ds.n_items(); ++i) {
        for (std::size_t t = 0; t < ds.n_time_points(); ++t) {
            out << ds.item_ids()[i] << ',' << ds.time_points()[t];
            for (std::size_t f = 0; f < ds.n_features(); ++f) out << ',' << format_double(ds.value(i, t, f));
            out << '\n';
        }
    }
}

void write_csv(const TemporalDataset& ds, const std::filesystem::path& path, const std::string& id_column,
               const std::string& time_column) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
    write_csv(ds, out, id_column, time_column);
    if (!out) throw Error(ErrorKind::Io, "write failed for '" + path.string() + "'");
}

} // namespace driftmeter
