#pragma once

#include "driftmeter/clustering.hpp"
#include "driftmeter/dataset.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace driftmeter {

/// Four clusters centred at (+d,+d), (-d,+d), (-d,-d), (+d,-d) around the origin.
struct SynthConfig {
    std::size_t n_items = 500;
    std::size_t n_time_points = 20;
    double cluster_distance = 5.0;
    double jitter_sigma = 0.5;
    std::size_t max_jumps = 20;
    std::uint64_t seed = 0;
    /// Require jitter_sigma < cluster_distance. Only tests switch this off.
    bool enforce_separation = true;
};

/// Throws InvalidConfig on n_items < 4, n_time_points < 2, d <= 0, sigma < 0,
/// or sigma >= d while separation is enforced.
void validate(const SynthConfig& cfg);

/// Quadrant label of a sign pattern: 0 (+,+), 1 (-,+), 2 (-,-), 3 (+,-).
std::size_t quadrant_label(double x, double y);

/// True cluster of every item at every time point.
struct GroundTruthTrace {
    std::vector<TimeLabel> time_points;
    std::vector<std::vector<std::size_t>> labels;  ///< [time index][item]
    std::vector<std::size_t> jumps;                ///< items moved on entering each time point (0 for the first)

    Partition partition_at(const std::vector<std::string>& item_ids, std::size_t time_index) const;
};

struct SyntheticRun {
    TemporalDataset dataset;
    GroundTruthTrace trace;
};

/// Time point 1 deals items round-robin onto the four quadrants. Every later
/// time point draws j uniformly from [0, max_jumps], picks j distinct items
/// and flips the sign of x, y or both (uniform over the three) of each
/// one's centre. Every item then gets fresh N(0, sigma^2) jitter per
/// coordinate about its centre.
///
/// Draw order from one mt19937_64 stream: per time point after the first,
/// j, then the j partial Fisher-Yates picks, then the j flip choices; then,
/// at every time point, the jitter for items in order, x before y.
/// Features are "x" and "y"; time points are 1..n; ids are item001, item002, ...
SyntheticRun generate(const SynthConfig& cfg);

/// Fraction of time points at which k-means reproduces the ground-truth
/// partition exactly, up to relabeling.
double evaluate_recovery(const TemporalDataset& ds, const GroundTruthTrace& trace, const KMeansConfig& cfg);

} // namespace driftmeter
