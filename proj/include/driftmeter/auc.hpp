#pragma once

#include "driftmeter/clustering.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace driftmeter {

/// Bijection from comparison labels onto reference labels.
struct Alignment {
    std::vector<std::size_t> mapping; ///< mapping[comparison label] = reference label
    std::uint64_t overlap = 0;        ///< items whose mapped label equals their reference label
};

/// Maximum-overlap assignment between the label spaces (Hungarian method on
/// the contingency table). Comparison clusters are visited in an order fixed
/// by their contingency rows rather than their label numbers, so relabeling
/// the comparison partition permutes the mapping and nothing else.
/// Throws KMismatch when k differs, ItemMismatch when the items differ.
Alignment align(const Partition& reference, const Partition& comparison);

/// Comparison partition with every label passed through the alignment.
Partition apply_alignment(const Partition& comparison, const Alignment& alignment);

struct RocCurve {
    std::vector<std::pair<double, double>> points; ///< (fpr, tpr) from (0,0) to (1,1)
    double auc = 0.0;
};

/// ROC by sweeping thresholds over distinct scores in descending order, one
/// vertex per distinct score (tied scores move as a group), area by the
/// trapezoid rule. std::nullopt when truth holds only one class.
std::optional<RocCurve> binary_auc(const std::vector<bool>& truth, const std::vector<double>& scores);

struct MulticlassAuc {
    double value = 0.0;
    std::size_t pairs_used = 0;
    std::size_t pairs_skipped = 0; ///< class pairs with an empty side; non-zero raises the warning
};

/// Hand & Till multi-class AUC of an already aligned comparison against the
/// reference. For each unordered class pair (i, j) the items with reference
/// label i or j are scored 1 when their comparison label is the positive
/// class and 0 otherwise; A(i,j) averages the two directions, and the result
/// is 2 / (c (c - 1)) times the sum over unordered pairs, so identical
/// partitions score exactly 1.
MulticlassAuc multiclass_auc(const Partition& reference, const Partition& aligned_comparison);

/// align() followed by multiclass_auc().
MulticlassAuc aligned_multiclass_auc(const Partition& reference, const Partition& comparison);

} // namespace driftmeter
