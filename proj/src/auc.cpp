#include "driftmeter/auc.hpp"

#include "driftmeter/error.hpp"
#include "driftmeter/validity.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace driftmeter {

namespace {

// Minimum-cost perfect assignment on a square matrix (potentials form of the
// Hungarian method). Returns assignment[row] = col.
std::vector<std::size_t> hungarian(const std::vector<std::vector<std::int64_t>>& cost) {
    const std::size_t n = cost.size();
    constexpr std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
    std::vector<std::int64_t> u(n + 1, 0), v(n + 1, 0);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::vector<std::int64_t> minv(n + 1, inf);
        std::vector<bool> used(n + 1, false);
        do {
            used[j0] = true;
            const std::size_t i0 = p[j0];
            std::int64_t delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const std::int64_t cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<std::size_t> assignment(n, 0);
    for (std::size_t j = 1; j <= n; ++j) assignment[p[j] - 1] = j - 1;
    return assignment;
}

} // namespace

Alignment align(const Partition& reference, const Partition& comparison) {
    if (reference.k != comparison.k)
        throw Error(ErrorKind::KMismatch, "cannot align k = " + std::to_string(comparison.k) +
                                              " onto k = " + std::to_string(reference.k));
    const auto ct = contingency(reference, comparison);
    const std::size_t k = reference.k;

    // Visit comparison clusters in descending lexicographic order of their
    // contingency rows; rows that compare equal are interchangeable.
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        for (std::size_t j = 0; j < k; ++j)
            if (ct(a, j) != ct(b, j)) return ct(a, j) > ct(b, j);
        return false;
    });

    std::vector<std::vector<std::int64_t>> cost(k, std::vector<std::int64_t>(k));
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t j = 0; j < k; ++j) cost[r][j] = -static_cast<std::int64_t>(ct(order[r], j));
    const auto assignment = hungarian(cost);

    Alignment out;
    out.mapping.assign(k, 0);
    for (std::size_t r = 0; r < k; ++r) {
        out.mapping[order[r]] = assignment[r];
        out.overlap += ct(order[r], assignment[r]);
    }
    return out;
}

Partition apply_alignment(const Partition& comparison, const Alignment& alignment) {
    if (alignment.mapping.size() != comparison.k)
        throw Error(ErrorKind::KMismatch, "alignment size does not match the partition's k");
    Partition out = comparison;
    for (auto& l : out.labels) l = alignment.mapping[l];
    if (comparison.centroids.rows() == comparison.k) {
        for (std::size_t c = 0; c < comparison.k; ++c) {
            const auto src = comparison.centroids.row(c);
            std::copy(src.begin(), src.end(), out.centroids.row(alignment.mapping[c]).begin());
        }
    }
    return out;
}

std::optional<RocCurve> binary_auc(const std::vector<bool>& truth, const std::vector<double>& scores) {
    if (truth.size() != scores.size()) throw Error(ErrorKind::InvalidConfig, "truth and scores differ in length");
    const std::uint64_t n_pos = static_cast<std::uint64_t>(std::count(truth.begin(), truth.end(), true));
    const std::uint64_t n_neg = truth.size() - n_pos;
    if (n_pos == 0 || n_neg == 0) return std::nullopt;

    std::vector<std::size_t> order(truth.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    RocCurve roc;
    roc.points.emplace_back(0.0, 0.0);
    // twice the area in units of one (negative, positive) cell, kept integral
    std::uint64_t area2 = 0;
    std::uint64_t tp = 0, fp = 0;
    for (std::size_t i = 0; i < order.size();) {
        const double s = scores[order[i]];
        const std::uint64_t tp0 = tp, fp0 = fp;
        for (; i < order.size() && scores[order[i]] == s; ++i) {
            if (truth[order[i]]) ++tp;
            else ++fp;
        }
        area2 += (fp - fp0) * (tp + tp0);
        roc.points.emplace_back(static_cast<double>(fp) / static_cast<double>(n_neg),
                                static_cast<double>(tp) / static_cast<double>(n_pos));
    }
    roc.auc = static_cast<double>(static_cast<long double>(area2) /
                                  (2.0L * static_cast<long double>(n_pos) * static_cast<long double>(n_neg)));
    return roc;
}

MulticlassAuc multiclass_auc(const Partition& reference, const Partition& aligned_comparison) {
    if (reference.item_ids != aligned_comparison.item_ids)
        throw Error(ErrorKind::ItemMismatch, "partitions do not cover the same items in the same order");
    const std::size_t c = reference.k;
    if (c < 2) throw Error(ErrorKind::InvalidConfig, "multi-class AUC needs at least 2 classes");
    if (aligned_comparison.k != c)
        throw Error(ErrorKind::KMismatch, "comparison is not aligned to the reference label space");

    MulticlassAuc out;
    double sum = 0.0;
    std::vector<bool> truth;
    std::vector<double> scores;
    for (std::size_t i = 0; i < c; ++i) {
        for (std::size_t j = i + 1; j < c; ++j) {
            double pair_auc = 0.0;
            bool degenerate = false;
            for (const std::size_t positive : {i, j}) {
                truth.clear();
                scores.clear();
                for (std::size_t n = 0; n < reference.labels.size(); ++n) {
                    const auto r = reference.labels[n];
                    if (r != i && r != j) continue;
                    truth.push_back(r == positive);
                    scores.push_back(aligned_comparison.labels[n] == positive ? 1.0 : 0.0);
                }
                const auto roc = binary_auc(truth, scores);
                if (!roc) {
                    degenerate = true;
                    break;
                }
                pair_auc += roc->auc;
            }
            if (degenerate) {
                ++out.pairs_skipped;
                continue;
            }
            sum += pair_auc / 2.0;
            ++out.pairs_used;
        }
    }
    if (out.pairs_used == 0) throw Error(ErrorKind::SingleClass, "no class pair has both classes present");
    out.value = sum / static_cast<double>(out.pairs_used);
    return out;
}

MulticlassAuc aligned_multiclass_auc(const Partition& reference, const Partition& comparison) {
    return multiclass_auc(reference, apply_alignment(comparison, align(reference, comparison)));
}

} // namespace driftmeter
