#pragma once

#include "driftmeter/clustering.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace driftmeter {

/// Overlap counts between a comparison partition C (rows) and a reference
/// partition T (columns): counts(i, j) = |{items labelled i in C and j in T}|.
class ContingencyTable {
public:
    ContingencyTable(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), counts_(rows * cols, 0) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::uint64_t n() const noexcept { return n_; }

    std::uint64_t operator()(std::size_t i, std::size_t j) const { return counts_[i * cols_ + j]; }
    void add(std::size_t i, std::size_t j, std::uint64_t count = 1) {
        counts_[i * cols_ + j] += count;
        n_ += count;
    }

    std::vector<std::uint64_t> row_sums() const;
    std::vector<std::uint64_t> col_sums() const;

    /// Same table with rows and columns exchanged (reference and comparison swapped).
    ContingencyTable transposed() const;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::uint64_t n_ = 0;
    std::vector<std::uint64_t> counts_;
};

/// Throws ItemMismatch unless both partitions cover the same items in the same order.
ContingencyTable contingency(const Partition& reference, const Partition& comparison);

/// Classification of all item pairs. Same cluster in C and same in T is a
/// true positive; same in C only is a false positive; same in T only is a
/// false negative; separated in both is a true negative.
struct PairCounts {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t tn = 0;
    std::uint64_t fn = 0;
    std::uint64_t n_pairs = 0;

    friend bool operator==(const PairCounts&, const PairCounts&) = default;
};

/// O(rows * cols) pair counting from the table's marginals.
PairCounts pair_counts(const ContingencyTable& ct);

/// An index value plus a flag raised when the index is mathematically
/// undefined for the input and a conventional value was substituted.
struct IndexValue {
    double value = 0.0;
    bool undefined = false;
};

/// TP / (TP + FN + FP). Reports 1.0 (flagged) when no pair is joined in either partition.
IndexValue jaccard(const PairCounts& pc);

/// (TP + TN) / pairs. Flagged 1.0 when there are no pairs.
IndexValue rand_index(const PairCounts& pc);

/// TP / sqrt((TP + FN)(TP + FP)), i.e. the geometric mean of pair precision
/// TP/(TP+FP) and pair recall TP/(TP+FN). (The two names are sometimes
/// written the other way round; the product is the same.) Reports 0.0
/// (flagged) when either factor is zero.
IndexValue fowlkes_mallows(const PairCounts& pc);

/// Variation of information 2H(T,C) - H(T) - H(C) in bits.
///
/// Evaluated as (sum a log a + sum b log b - 2 sum n_ij log n_ij) / n over the
/// row sums a, column sums b and cells n_ij, each sum taken over its sorted
/// terms. The log n terms cancel exactly, so identical partitions give
/// exactly 0, and the result is bit-identical under any relabeling and under
/// swapping the two partitions.
double variation_of_information(const ContingencyTable& ct);

/// Entropy in bits of a count vector (0 log 0 = 0).
double entropy_bits(const std::vector<std::uint64_t>& counts);

struct ScaledSeries {
    std::vector<double> values;
    bool all_zero = false; ///< every VI was 0; all values reported as 1.0
};

/// 1 - vi / max(vi) over a whole measurement run, so the most distant
/// comparison maps to 0 and identical clusterings map to 1.
/// Throws InvalidConfig on an empty series or a negative entry.
ScaledSeries scaled_reversed_vi(const std::vector<double>& vi_series);

struct IndexReport {
    double jaccard = 0.0;
    double rand = 0.0;
    double fowlkes_mallows = 0.0;
    double vi = 0.0;
    std::optional<double> scaled_reversed_vi; ///< set at series level only
    std::optional<double> auc;                ///< set by the auc module
    bool undefined = false;                   ///< some index fell back to a conventional value
};

/// All pair-counting indices and VI for one comparison.
IndexReport compare(const Partition& reference, const Partition& comparison);

} // namespace driftmeter
