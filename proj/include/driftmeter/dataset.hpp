#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace driftmeter {

using TimeLabel = std::int64_t;

/// Row-major items x features matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

    const std::vector<double>& data() const noexcept { return data_; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Observations of one time point; row i belongs to item_ids[i].
struct TimeSlice {
    std::vector<std::string> item_ids;
    Matrix matrix;
    TimeLabel time_point = 0;
};

/// Balanced item x time x feature panel. Immutable once constructed.
class TemporalDataset {
public:
    /// `values` is laid out as [item][time][feature]. Throws InvalidConfig when
    /// the shape invariants are violated (>= 2 items, >= 2 time points,
    /// >= 1 feature, unique ids, strictly increasing times, finite values).
    TemporalDataset(std::vector<std::string> item_ids, std::vector<TimeLabel> time_points,
                    std::vector<std::string> feature_names, std::vector<double> values);

    const std::vector<std::string>& item_ids() const noexcept { return item_ids_; }
    const std::vector<TimeLabel>& time_points() const noexcept { return time_points_; }
    const std::vector<std::string>& feature_names() const noexcept { return feature_names_; }

    std::size_t n_items() const noexcept { return item_ids_.size(); }
    std::size_t n_time_points() const noexcept { return time_points_.size(); }
    std::size_t n_features() const noexcept { return feature_names_.size(); }

    double value(std::size_t item, std::size_t time_index, std::size_t feature) const {
        return values_[(item * n_time_points() + time_index) * n_features() + feature];
    }

    /// Position of `t` in time_points(); throws UnknownTimePoint.
    std::size_t time_index(TimeLabel t) const;

    TimeSlice slice(TimeLabel t) const;
    TimeSlice slice_at(std::size_t time_index) const;

    friend bool operator==(const TemporalDataset&, const TemporalDataset&) = default;

private:
    std::vector<std::string> item_ids_;
    std::vector<TimeLabel> time_points_;
    std::vector<std::string> feature_names_;
    std::vector<double> values_;
};

/// Column mapping for the long-format CSV (one row per item and time point).
struct CsvSchema {
    std::string id_column = "id";
    std::string time_column = "t";
    std::vector<std::string> feature_columns;
};

/// Reads a long-format CSV. Items are ordered by natural_less on their id,
/// time points ascending, so row order in the file does not matter.
TemporalDataset ingest_csv(const std::filesystem::path& path, const CsvSchema& schema);
TemporalDataset ingest_csv(std::istream& in, const CsvSchema& schema);

/// Writes the panel in long format, grouped by item then time. Values use the
/// shortest representation that reads back to the same double.
void write_csv(const TemporalDataset& ds, std::ostream& out, const std::string& id_column,
               const std::string& time_column);
void write_csv(const TemporalDataset& ds, const std::filesystem::path& path,
               const std::string& id_column, const std::string& time_column);

/// Ordering that compares embedded digit runs numerically ("p2" < "p10").
bool natural_less(const std::string& a, const std::string& b);

/// Shortest round-trip decimal text for a double, locale independent.
std::string format_double(double v);

} // namespace driftmeter
