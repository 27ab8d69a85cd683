#include "driftmeter/monic.hpp"

#include "driftmeter/error.hpp"

#include <algorithm>
#include <cmath>

namespace driftmeter {

double AgingPolicy::item_weight(std::size_t carried) const {
    const std::size_t kept = horizon ? std::min(carried, *horizon - 1) : carried;
    double w = current_weight;
    double age = 1.0;
    for (std::size_t l = 1; l <= kept; ++l) {
        age *= previous_weight;
        w += age;
    }
    return w;
}

void validate(const AgingPolicy& policy) {
    if (!(policy.current_weight > 0.0)) throw Error(ErrorKind::InvalidConfig, "current_weight must be positive");
    if (!(policy.previous_weight > 0.0 && policy.previous_weight <= 1.0))
        throw Error(ErrorKind::InvalidConfig, "previous_weight must lie in (0, 1]");
    if (policy.horizon && *policy.horizon == 0) throw Error(ErrorKind::InvalidConfig, "horizon must be at least 1");
}

TransitionReport track_partitions(const std::vector<TimeLabel>& time_points, const std::vector<Partition>& partitions,
                                  const AgingPolicy& policy, double tau_match) {
    if (!(tau_match > 0.0 && tau_match <= 1.0))
        throw Error(ErrorKind::InvalidThreshold, "tau_match must lie in (0, 1], got " + std::to_string(tau_match));
    validate(policy);
    if (partitions.size() != time_points.size() || partitions.size() < 2)
        throw Error(ErrorKind::InvalidConfig, "need one partition per time point and at least 2 time points");

    TransitionReport report;
    report.k = partitions.front().k;
    const std::size_t n = partitions.front().labels.size();
    std::vector<std::size_t> carried(n, 0);

    for (std::size_t t = 0; t + 1 < partitions.size(); ++t) {
        const auto& old_p = partitions[t];
        const auto& new_p = partitions[t + 1];
        if (old_p.item_ids != new_p.item_ids)
            throw Error(ErrorKind::ItemMismatch, "partitions do not cover the same items in the same order");

        std::vector<double> shared(old_p.k * new_p.k, 0.0);
        std::vector<double> mass(old_p.k, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double w = policy.item_weight(carried[i]);
            shared[old_p.labels[i] * new_p.k + new_p.labels[i]] += w;
            mass[old_p.labels[i]] += w;
        }

        Transition tr;
        tr.from = time_points[t];
        tr.to = time_points[t + 1];
        std::vector<std::optional<std::size_t>> successor(old_p.k);
        std::vector<bool> has_inbound(new_p.k, false);
        for (std::size_t x = 0; x < old_p.k; ++x) {
            std::size_t best = 0;
            double best_overlap = -1.0;
            for (std::size_t y = 0; y < new_p.k; ++y) {
                const double ov = mass[x] > 0.0 ? shared[x * new_p.k + y] / mass[x] : 0.0;
                if (ov > best_overlap) {
                    best_overlap = ov;
                    best = y;
                }
            }
            if (best_overlap >= tau_match) {
                successor[x] = best;
                has_inbound[best] = true;
                ++tr.survived;
            } else {
                ++tr.disappeared;
            }
            for (std::size_t y = 0; y < new_p.k; ++y) {
                const double ov = mass[x] > 0.0 ? shared[x * new_p.k + y] / mass[x] : 0.0;
                if (ov > 0.0) tr.matches.push_back({x, y, ov, successor[x] == y});
            }
        }
        tr.appeared = static_cast<std::size_t>(std::count(has_inbound.begin(), has_inbound.end(), false));

        for (std::size_t i = 0; i < n; ++i)
            carried[i] = successor[old_p.labels[i]] == new_p.labels[i] ? carried[i] + 1 : 0;
        report.transitions.push_back(std::move(tr));
    }
    return report;
}

TransitionReport track(const TemporalDataset& ds, const KMeansConfig& cfg, const AgingPolicy& policy,
                       double tau_match) {
    if (!(tau_match > 0.0 && tau_match <= 1.0))
        throw Error(ErrorKind::InvalidThreshold, "tau_match must lie in (0, 1], got " + std::to_string(tau_match));
    validate(policy);
    return track_partitions(ds.time_points(), cluster_all(ds, cfg), policy, tau_match);
}

} // namespace driftmeter
