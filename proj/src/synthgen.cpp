#include "driftmeter/synthgen.hpp"

#include "driftmeter/error.hpp"
#include "driftmeter/rng.hpp"

#include <numeric>
#include <string>

namespace driftmeter {

namespace {

constexpr double sign_x[4] = {1.0, -1.0, -1.0, 1.0};
constexpr double sign_y[4] = {1.0, 1.0, -1.0, -1.0};

std::string item_id(std::size_t i, std::size_t n) {
    std::string digits = std::to_string(i + 1);
    const std::size_t width = std::max<std::size_t>(3, std::to_string(n).size());
    if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
    return "item" + digits;
}

} // namespace

void validate(const SynthConfig& cfg) {
    if (cfg.n_items < 4) throw Error(ErrorKind::InvalidConfig, "n_items must be at least 4");
    if (cfg.n_time_points < 2) throw Error(ErrorKind::InvalidConfig, "n_time_points must be at least 2");
    if (!(cfg.cluster_distance > 0.0)) throw Error(ErrorKind::InvalidConfig, "cluster_distance must be positive");
    if (!(cfg.jitter_sigma >= 0.0)) throw Error(ErrorKind::InvalidConfig, "jitter_sigma must be non-negative");
    if (cfg.enforce_separation && !(cfg.jitter_sigma < cfg.cluster_distance))
        throw Error(ErrorKind::InvalidConfig, "jitter_sigma must be below cluster_distance");
}

std::size_t quadrant_label(double x, double y) {
    if (x >= 0.0) return y >= 0.0 ? 0 : 3;
    return y >= 0.0 ? 1 : 2;
}

Partition GroundTruthTrace::partition_at(const std::vector<std::string>& item_ids, std::size_t time_index) const {
    return Partition{item_ids, labels.at(time_index), 4, Matrix()};
}

SyntheticRun generate(const SynthConfig& cfg) {
    validate(cfg);
    const std::size_t n = cfg.n_items;
    const std::size_t steps = cfg.n_time_points;
    const double d = cfg.cluster_distance;
    Rng rng(cfg.seed);

    GroundTruthTrace trace;
    std::vector<std::size_t> current(n);
    for (std::size_t i = 0; i < n; ++i) current[i] = i % 4;

    std::vector<double> values(n * steps * 2);
    std::vector<std::size_t> pool(n);
    for (std::size_t t = 0; t < steps; ++t) {
        std::size_t jumps = 0;
        if (t > 0) {
            jumps = static_cast<std::size_t>(rng.below(std::min(cfg.max_jumps, n) + 1));
            std::iota(pool.begin(), pool.end(), 0);
            for (std::size_t j = 0; j < jumps; ++j) {
                const std::size_t pick = j + static_cast<std::size_t>(rng.below(n - j));
                std::swap(pool[j], pool[pick]);
            }
            for (std::size_t j = 0; j < jumps; ++j) {
                const std::size_t item = pool[j];
                double sx = sign_x[current[item]], sy = sign_y[current[item]];
                switch (rng.below(3)) {
                case 0: sx = -sx; break;
                case 1: sy = -sy; break;
                default: sx = -sx; sy = -sy; break;
                }
                current[item] = quadrant_label(sx, sy);
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            const double x = sign_x[current[i]] * d + cfg.jitter_sigma * rng.normal();
            const double y = sign_y[current[i]] * d + cfg.jitter_sigma * rng.normal();
            values[(i * steps + t) * 2] = x;
            values[(i * steps + t) * 2 + 1] = y;
        }
        trace.time_points.push_back(static_cast<TimeLabel>(t + 1));
        trace.labels.push_back(current);
        trace.jumps.push_back(jumps);
    }

    std::vector<std::string> ids;
    ids.reserve(n);
    for (std::size_t i = 0; i < n; ++i) ids.push_back(item_id(i, n));
    TemporalDataset ds(std::move(ids), trace.time_points, {"x", "y"}, std::move(values));
    return {std::move(ds), std::move(trace)};
}

double evaluate_recovery(const TemporalDataset& ds, const GroundTruthTrace& trace, const KMeansConfig& cfg) {
    if (trace.labels.size() != ds.n_time_points())
        throw Error(ErrorKind::InvalidConfig, "trace and dataset differ in time points");
    std::size_t recovered = 0;
    for (std::size_t t = 0; t < ds.n_time_points(); ++t) {
        const auto p = kmeans(ds.slice_at(t), cfg);
        if (same_up_to_relabeling(p.labels, trace.labels[t])) ++recovered;
    }
    return static_cast<double>(recovered) / static_cast<double>(ds.n_time_points());
}

} // namespace driftmeter
