#pragma once

#include "driftmeter/dataset.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace driftmeter {

enum class KMeansInit { kmeanspp, random_points };

struct KMeansConfig {
    std::size_t k = 4;
    std::size_t max_iterations = 300;
    double tolerance = 1e-8; ///< stop once every centroid moves less than this (squared distance)
    std::uint64_t seed = 0;
    KMeansInit init = KMeansInit::kmeanspp;
    bool standardize = false; ///< z-score each feature within the slice before clustering
    std::size_t n_init = 10;  ///< independent seeded starts; the lowest within-cluster SS wins
};

/// Throws InvalidConfig unless k >= 2, max_iterations >= 1, n_init >= 1 and tolerance >= 0.
void validate(const KMeansConfig& cfg);

/// Hard assignment of items to clusters [0, k). No cluster is empty.
struct Partition {
    std::vector<std::string> item_ids;
    std::vector<std::size_t> labels;
    std::size_t k = 0;
    Matrix centroids; ///< k x features, in the (possibly standardized) clustering space

    /// Builds a partition from raw labels, k = max label + 1. Throws
    /// InvalidConfig on size mismatch or when a label in [0, k) is unused.
    static Partition from_labels(std::vector<std::string> item_ids, std::vector<std::size_t> labels);

    std::vector<std::size_t> cluster_sizes() const;
};

/// Lloyd's algorithm from n_init starts drawn from one seeded stream; the
/// start with the lowest within-cluster SS is kept (earliest on ties).
/// k-means++ seeding is the greedy variant: each centre is the best of
/// 2 + floor(ln k) sampled candidates. Deterministic for a given (slice, cfg).
/// Throws DegenerateInput when the slice has fewer than k distinct points.
Partition kmeans(const TimeSlice& slice, const KMeansConfig& cfg);

/// kmeans on every time point with the same configuration, ordered by time.
std::vector<Partition> cluster_all(const TemporalDataset& ds, const KMeansConfig& cfg);

/// Sum of squared distances from each point to its assigned centroid.
double within_cluster_ss(const Matrix& points, const std::vector<std::size_t>& labels, const Matrix& centroids);

/// True when both labelings induce the same grouping of items.
bool same_up_to_relabeling(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b);

} // namespace driftmeter
