#include "driftmeter/drift.hpp"

#include "driftmeter/auc.hpp"
#include "driftmeter/error.hpp"
#include "driftmeter/validity.hpp"

#include <algorithm>

namespace driftmeter {

std::string_view to_string(IndexKind kind) noexcept {
    switch (kind) {
    case IndexKind::jaccard: return "jaccard";
    case IndexKind::rand: return "rand";
    case IndexKind::fm: return "fm";
    case IndexKind::vi: return "vi";
    case IndexKind::scaled_vi: return "scaled_vi";
    case IndexKind::auc: return "auc";
    }
    return "unknown";
}

std::string_view to_string(CompareMode mode) noexcept {
    return mode == CompareMode::first_vs_rest ? "first" : "consecutive";
}

IndexKind parse_index(std::string_view name) {
    for (auto k : all_indices)
        if (to_string(k) == name) return k;
    throw Error(ErrorKind::InvalidConfig, "unknown index '" + std::string(name) +
                                              "' (expected jaccard, rand, fm, vi, scaled_vi or auc)");
}

CompareMode parse_mode(std::string_view name) {
    if (name == "first" || name == "first_vs_rest") return CompareMode::first_vs_rest;
    if (name == "consecutive") return CompareMode::consecutive;
    throw Error(ErrorKind::InvalidConfig, "unknown mode '" + std::string(name) + "' (expected first or consecutive)");
}

void validate(const DriftConfig& cfg) {
    if (cfg.indices.empty()) throw Error(ErrorKind::InvalidConfig, "no indices requested");
    const auto has = [&](IndexKind k) { return std::find(cfg.indices.begin(), cfg.indices.end(), k) != cfg.indices.end(); };
    if (has(IndexKind::scaled_vi) && !has(IndexKind::vi))
        throw Error(ErrorKind::IndexUnavailable, "scaled_vi is derived from the vi series; request vi as well");
    validate(cfg.kmeans);
}

std::optional<double> DriftSeries::slope(IndexKind kind) const {
    const auto it = trends.find(kind);
    if (it == trends.end() || !it->second) return std::nullopt;
    return it->second->slope;
}

TrendLine fit_trend(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw Error(ErrorKind::DegenerateRegression, "xs and ys differ in length");
    if (xs.size() < 2) throw Error(ErrorKind::DegenerateRegression, "a trend needs at least 2 points");
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0) throw Error(ErrorKind::DegenerateRegression, "all xs are equal");
    const double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

DriftSeries measure_partitions(const std::vector<TimeLabel>& time_points, const std::vector<Partition>& partitions,
                               const DriftConfig& cfg) {
    validate(cfg);
    if (partitions.size() != time_points.size() || partitions.size() < 2)
        throw Error(ErrorKind::InvalidConfig, "need one partition per time point and at least 2 time points");

    std::vector<IndexKind> wanted;
    for (auto k : all_indices)
        if (std::find(cfg.indices.begin(), cfg.indices.end(), k) != cfg.indices.end()) wanted.push_back(k);
    const auto wants = [&](IndexKind k) { return std::find(wanted.begin(), wanted.end(), k) != wanted.end(); };

    DriftSeries out;
    for (auto k : wanted) out.values[k];
    for (std::size_t c = 1; c < partitions.size(); ++c) {
        const std::size_t r = cfg.mode == CompareMode::first_vs_rest ? 0 : c - 1;
        const auto& reference = partitions[r];
        const auto& comparison = partitions[c];
        out.comparisons.emplace_back(time_points[r], time_points[c]);
        const std::string where = "(" + std::to_string(time_points[r]) + ", " + std::to_string(time_points[c]) + ")";

        const auto ct = contingency(reference, comparison);
        const auto pc = pair_counts(ct);
        if (wants(IndexKind::jaccard)) {
            const auto v = jaccard(pc);
            if (v.undefined) out.warnings.push_back("jaccard undefined at " + where + ", reported as 1");
            out.values[IndexKind::jaccard].push_back(v.value);
        }
        if (wants(IndexKind::rand)) out.values[IndexKind::rand].push_back(rand_index(pc).value);
        if (wants(IndexKind::fm)) {
            const auto v = fowlkes_mallows(pc);
            if (v.undefined) out.warnings.push_back("fm undefined at " + where + ", reported as 0");
            out.values[IndexKind::fm].push_back(v.value);
        }
        if (wants(IndexKind::vi)) out.values[IndexKind::vi].push_back(variation_of_information(ct));
        if (wants(IndexKind::auc)) {
            const auto m = aligned_multiclass_auc(reference, comparison);
            if (m.pairs_skipped != 0)
                out.warnings.push_back("auc skipped " + std::to_string(m.pairs_skipped) + " degenerate class pairs at " +
                                       where);
            out.values[IndexKind::auc].push_back(m.value);
        }
    }
    if (wants(IndexKind::scaled_vi)) {
        const auto scaled = scaled_reversed_vi(out.values[IndexKind::vi]);
        if (scaled.all_zero) out.warnings.push_back("every vi is 0; scaled_vi reported as 1 throughout");
        out.values[IndexKind::scaled_vi] = scaled.values;
    }

    std::vector<double> xs;
    for (const auto& [ref, cmp] : out.comparisons) xs.push_back(static_cast<double>(cmp));
    for (auto k : wanted) {
        if (xs.size() < 2) {
            out.trends[k] = std::nullopt;
            continue;
        }
        out.trends[k] = fit_trend(xs, out.values[k]);
    }
    return out;
}

DriftSeries measure(const TemporalDataset& ds, const DriftConfig& cfg) {
    validate(cfg);
    return measure_partitions(ds.time_points(), cluster_all(ds, cfg.kmeans), cfg);
}

} // namespace driftmeter
