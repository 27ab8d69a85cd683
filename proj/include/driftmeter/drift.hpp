#pragma once

#include "driftmeter/clustering.hpp"
#include "driftmeter/dataset.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace driftmeter {

enum class CompareMode {
    first_vs_rest, ///< (t1, t2), (t1, t3), ...
    consecutive,   ///< (t1, t2), (t2, t3), ...
};

/// Declaration order is the output order.
enum class IndexKind { jaccard, rand, fm, vi, scaled_vi, auc };

inline constexpr std::array<IndexKind, 6> all_indices = {IndexKind::jaccard, IndexKind::rand, IndexKind::fm,
                                                         IndexKind::vi,      IndexKind::scaled_vi, IndexKind::auc};

std::string_view to_string(IndexKind kind) noexcept;
std::string_view to_string(CompareMode mode) noexcept;
/// Throws InvalidConfig on an unknown name.
IndexKind parse_index(std::string_view name);
CompareMode parse_mode(std::string_view name);

struct DriftConfig {
    CompareMode mode = CompareMode::first_vs_rest;
    std::vector<IndexKind> indices = {all_indices.begin(), all_indices.end()};
    KMeansConfig kmeans;
};

/// Throws InvalidConfig on an empty index list, IndexUnavailable when
/// scaled_vi is requested without vi.
void validate(const DriftConfig& cfg);

struct TrendLine {
    double slope = 0.0;
    double intercept = 0.0;
};

struct DriftSeries {
    std::vector<std::pair<TimeLabel, TimeLabel>> comparisons; ///< (reference, comparison)
    std::map<IndexKind, std::vector<double>> values;          ///< aligned with comparisons
    std::map<IndexKind, std::optional<TrendLine>> trends;     ///< fit against comparison time; absent below 2 points
    std::vector<std::string> warnings;

    std::optional<double> slope(IndexKind kind) const;
};

/// Clusters every time point under one shared configuration, compares the
/// partitions pairwise according to the mode and fits a trend per index.
DriftSeries measure(const TemporalDataset& ds, const DriftConfig& cfg);

/// Same as measure() on partitions that were already computed (one per time point).
DriftSeries measure_partitions(const std::vector<TimeLabel>& time_points, const std::vector<Partition>& partitions,
                               const DriftConfig& cfg);

/// Ordinary least squares line through (xs, ys). Throws DegenerateRegression
/// for mismatched lengths, fewer than 2 points, or constant xs.
TrendLine fit_trend(const std::vector<double>& xs, const std::vector<double>& ys);

} // namespace driftmeter
