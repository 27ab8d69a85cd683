#pragma once

#include "driftmeter/clustering.hpp"
#include "driftmeter/dataset.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace driftmeter {

/// Record aging for transition tracking.
///
/// An item in cluster X at time t carries one record for t (weight
/// current_weight) plus one record for each earlier consecutive time point at
/// which it sat in a cluster whose lineage survived into X. A record l steps
/// old weighs previous_weight^l; records at least `horizon` time points old
/// are dropped. The default horizon of 2 keeps the current record and the
/// one carried over from the previous time point.
struct AgingPolicy {
    double current_weight = 1.0;
    double previous_weight = 0.5;
    std::optional<std::size_t> horizon = 2; ///< nullopt keeps every record

    /// Every record of the lineage at full weight.
    static AgingPolicy no_aging() { return {1.0, 1.0, std::nullopt}; }

    /// Weight of an item whose membership has been carried over `carried` times.
    double item_weight(std::size_t carried) const;
};

/// Throws InvalidConfig on non-positive weights, previous_weight > 1 or horizon 0.
void validate(const AgingPolicy& policy);

struct ClusterMatch {
    std::size_t old_cluster = 0;
    std::size_t new_cluster = 0;
    double overlap = 0.0; ///< weighted share of the old cluster found in the new one
    bool survived = false; ///< the old cluster survived into this new cluster
};

struct Transition {
    TimeLabel from = 0;
    TimeLabel to = 0;
    std::size_t survived = 0;
    std::size_t appeared = 0;
    std::size_t disappeared = 0;
    std::vector<ClusterMatch> matches; ///< every (old, new) pair with positive overlap
};

struct TransitionReport {
    std::size_t k = 0;
    std::vector<Transition> transitions; ///< one per consecutive pair of time points
};

/// Clusters each time point with `cfg` and tracks survived, appeared and
/// disappeared clusters between consecutive time points. An old cluster
/// survives into the new cluster holding its largest weighted overlap (lowest
/// index on ties) when that overlap is at least tau_match; several old
/// clusters may survive into the same new cluster. Throws InvalidThreshold
/// unless tau_match is in (0, 1].
TransitionReport track(const TemporalDataset& ds, const KMeansConfig& cfg, const AgingPolicy& policy,
                       double tau_match);

/// track() on partitions that were already computed (one per time point).
TransitionReport track_partitions(const std::vector<TimeLabel>& time_points, const std::vector<Partition>& partitions,
                                  const AgingPolicy& policy, double tau_match);

} // namespace driftmeter
