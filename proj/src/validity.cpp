#include "driftmeter/validity.hpp"

#include "driftmeter/error.hpp"

#include <algorithm>
#include <cmath>

namespace driftmeter {

namespace {

std::uint64_t choose2(std::uint64_t x) { return x < 2 ? 0 : x * (x - 1) / 2; }

// sum of c * log2(c) over the counts, accumulated in sorted order
double sum_xlogx(std::vector<std::uint64_t> counts) {
    std::sort(counts.begin(), counts.end());
    double s = 0.0;
    for (auto c : counts)
        if (c > 1) s += static_cast<double>(c) * std::log2(static_cast<double>(c));
    return s;
}

} // namespace

std::vector<std::uint64_t> ContingencyTable::row_sums() const {
    std::vector<std::uint64_t> s(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) s[i] += (*this)(i, j);
    return s;
}

std::vector<std::uint64_t> ContingencyTable::col_sums() const {
    std::vector<std::uint64_t> s(cols_, 0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) s[j] += (*this)(i, j);
    return s;
}

ContingencyTable ContingencyTable::transposed() const {
    ContingencyTable t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != 0) t.add(j, i, (*this)(i, j));
    return t;
}

ContingencyTable contingency(const Partition& reference, const Partition& comparison) {
    if (reference.item_ids != comparison.item_ids)
        throw Error(ErrorKind::ItemMismatch, "partitions do not cover the same items in the same order");
    if (reference.labels.size() != reference.item_ids.size() || comparison.labels.size() != comparison.item_ids.size())
        throw Error(ErrorKind::ItemMismatch, "label count differs from item count");
    ContingencyTable ct(comparison.k, reference.k);
    for (std::size_t i = 0; i < reference.labels.size(); ++i) {
        if (comparison.labels[i] >= comparison.k || reference.labels[i] >= reference.k)
            throw Error(ErrorKind::InvalidConfig, "label out of range [0, k)");
        ct.add(comparison.labels[i], reference.labels[i]);
    }
    return ct;
}

PairCounts pair_counts(const ContingencyTable& ct) {
    PairCounts pc;
    pc.n_pairs = choose2(ct.n());
    for (std::size_t i = 0; i < ct.rows(); ++i)
        for (std::size_t j = 0; j < ct.cols(); ++j) pc.tp += choose2(ct(i, j));
    std::uint64_t joined_c = 0, joined_t = 0;
    for (auto a : ct.row_sums()) joined_c += choose2(a);
    for (auto b : ct.col_sums()) joined_t += choose2(b);
    pc.fp = joined_c - pc.tp;
    pc.fn = joined_t - pc.tp;
    pc.tn = pc.n_pairs - pc.tp - pc.fp - pc.fn;
    return pc;
}

IndexValue jaccard(const PairCounts& pc) {
    const std::uint64_t denom = pc.tp + pc.fn + pc.fp;
    if (denom == 0) return {1.0, true};
    return {static_cast<double>(pc.tp) / static_cast<double>(denom), false};
}

IndexValue rand_index(const PairCounts& pc) {
    if (pc.n_pairs == 0) return {1.0, true};
    return {static_cast<double>(pc.tp + pc.tn) / static_cast<double>(pc.n_pairs), false};
}

IndexValue fowlkes_mallows(const PairCounts& pc) {
    const std::uint64_t a = pc.tp + pc.fn;
    const std::uint64_t b = pc.tp + pc.fp;
    if (a == 0 || b == 0) return {0.0, true};
    // the product is formed in long double so it is exact below 2^64
    const long double prod = static_cast<long double>(a) * static_cast<long double>(b);
    return {static_cast<double>(static_cast<long double>(pc.tp) / std::sqrt(prod)), false};
}

double entropy_bits(const std::vector<std::uint64_t>& counts) {
    std::uint64_t n = 0;
    for (auto c : counts) n += c;
    if (n == 0) return 0.0;
    const double nd = static_cast<double>(n);
    return std::log2(nd) - sum_xlogx(counts) / nd;
}

double variation_of_information(const ContingencyTable& ct) {
    if (ct.n() == 0) throw Error(ErrorKind::InvalidConfig, "variation of information needs n > 0");
    std::vector<std::uint64_t> cells;
    cells.reserve(ct.rows() * ct.cols());
    for (std::size_t i = 0; i < ct.rows(); ++i)
        for (std::size_t j = 0; j < ct.cols(); ++j)
            if (ct(i, j) != 0) cells.push_back(ct(i, j));
    // the two marginal terms are added in a fixed order so swapping C and T is exact
    const double a = sum_xlogx(ct.row_sums());
    const double b = sum_xlogx(ct.col_sums());
    const double marginals = a < b ? a + b : b + a;
    const double vi = (marginals - 2.0 * sum_xlogx(std::move(cells))) / static_cast<double>(ct.n());
    return vi > 0.0 ? vi : 0.0;
}

ScaledSeries scaled_reversed_vi(const std::vector<double>& vi_series) {
    if (vi_series.empty()) throw Error(ErrorKind::InvalidConfig, "scaled VI needs a non-empty series");
    double max_vi = 0.0;
    for (double v : vi_series) {
        if (!(v >= 0.0)) throw Error(ErrorKind::InvalidConfig, "VI values must be non-negative");
        max_vi = std::max(max_vi, v);
    }
    ScaledSeries out;
    out.values.reserve(vi_series.size());
    if (max_vi == 0.0) {
        out.values.assign(vi_series.size(), 1.0);
        out.all_zero = true;
        return out;
    }
    for (double v : vi_series) out.values.push_back(1.0 - v / max_vi);
    return out;
}

IndexReport compare(const Partition& reference, const Partition& comparison) {
    const auto ct = contingency(reference, comparison);
    const auto pc = pair_counts(ct);
    const auto jc = jaccard(pc);
    const auto rs = rand_index(pc);
    const auto fm = fowlkes_mallows(pc);
    IndexReport r;
    r.jaccard = jc.value;
    r.rand = rs.value;
    r.fowlkes_mallows = fm.value;
    r.vi = variation_of_information(ct);
    r.undefined = jc.undefined || rs.undefined || fm.undefined;
    return r;
}

} // namespace driftmeter
