#include "driftmeter/clustering.hpp"

#include "driftmeter/error.hpp"
#include "driftmeter/rng.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <utility>

namespace driftmeter {

namespace {

double sq_dist(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

Matrix standardized(const Matrix& m) {
    Matrix out = m;
    const double n = static_cast<double>(m.rows());
    for (std::size_t f = 0; f < m.cols(); ++f) {
        double mean = 0.0;
        for (std::size_t i = 0; i < m.rows(); ++i) mean += m(i, f);
        mean /= n;
        double var = 0.0;
        for (std::size_t i = 0; i < m.rows(); ++i) var += (m(i, f) - mean) * (m(i, f) - mean);
        const double sd = std::sqrt(var / n);
        for (std::size_t i = 0; i < m.rows(); ++i) out(i, f) = sd > 0.0 ? (m(i, f) - mean) / sd : m(i, f) - mean;
    }
    return out;
}

std::size_t count_distinct(const Matrix& points, std::size_t stop_at) {
    std::set<std::vector<double>> seen;
    for (std::size_t i = 0; i < points.rows() && seen.size() < stop_at; ++i) {
        const auto r = points.row(i);
        seen.emplace(r.begin(), r.end());
    }
    return seen.size();
}

void copy_row(const Matrix& from, std::size_t r, Matrix& to, std::size_t c) {
    std::copy(from.row(r).begin(), from.row(r).end(), to.row(c).begin());
}

// Index whose cumulative weight first exceeds target; zero weights are skipped.
std::size_t sample_by_weight(const std::vector<double>& w, double target) {
    std::size_t chosen = w.size();
    double running = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] <= 0.0) continue;
        running += w[i];
        chosen = i;
        if (running > target) break;
    }
    return chosen;
}

Matrix init_kmeanspp(const Matrix& points, std::size_t k, Rng& rng) {
    const std::size_t n = points.rows();
    const std::size_t trials = 2 + static_cast<std::size_t>(std::log(static_cast<double>(k)));
    Matrix centroids(k, points.cols());
    copy_row(points, static_cast<std::size_t>(rng.below(n)), centroids, 0);
    std::vector<double> d2(n), trial(n), best_d2(n);
    for (std::size_t i = 0; i < n; ++i) d2[i] = sq_dist(points.row(i), centroids.row(0));
    for (std::size_t c = 1; c < k; ++c) {
        // total > 0 because fewer than k distinct points were already rejected
        const double total = std::accumulate(d2.begin(), d2.end(), 0.0);
        double best_potential = std::numeric_limits<double>::infinity();
        std::size_t best = n;
        for (std::size_t t = 0; t < trials; ++t) {
            const std::size_t cand = sample_by_weight(d2, rng.uniform() * total);
            double potential = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                trial[i] = std::min(d2[i], sq_dist(points.row(i), points.row(cand)));
                potential += trial[i];
            }
            if (potential < best_potential) {
                best_potential = potential;
                best = cand;
                best_d2.swap(trial);
            }
        }
        copy_row(points, best, centroids, c);
        d2.swap(best_d2);
    }
    return centroids;
}

Matrix init_random_points(const Matrix& points, std::size_t k, Rng& rng) {
    const std::size_t n = points.rows();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    Matrix centroids(k, points.cols());
    std::set<std::vector<double>> used;
    std::size_t filled = 0;
    for (std::size_t i = 0; i < n && filled < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
        std::swap(order[i], order[j]);
        const auto r = points.row(order[i]);
        if (!used.emplace(r.begin(), r.end()).second) continue;
        copy_row(points, order[i], centroids, filled++);
    }
    return centroids;
}

// Nearest centroid, ties to the lowest index.
void assign(const Matrix& points, const Matrix& centroids, std::vector<std::size_t>& labels) {
    for (std::size_t i = 0; i < points.rows(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t arg = 0;
        for (std::size_t c = 0; c < centroids.rows(); ++c) {
            const double d = sq_dist(points.row(i), centroids.row(c));
            if (d < best) {
                best = d;
                arg = c;
            }
        }
        labels[i] = arg;
    }
}

// Each empty cluster takes over the point farthest from its centroid, drawn
// from clusters that keep at least one member.
void repair_empty(const Matrix& points, Matrix& centroids, std::vector<std::size_t>& labels) {
    const std::size_t k = centroids.rows();
    std::vector<std::size_t> sizes(k, 0);
    for (auto l : labels) ++sizes[l];
    for (std::size_t c = 0; c < k; ++c) {
        if (sizes[c] != 0) continue;
        double worst = -1.0;
        std::size_t arg = 0;
        for (std::size_t i = 0; i < points.rows(); ++i) {
            if (sizes[labels[i]] < 2) continue;
            const double d = sq_dist(points.row(i), centroids.row(labels[i]));
            if (d > worst) {
                worst = d;
                arg = i;
            }
        }
        --sizes[labels[arg]];
        labels[arg] = c;
        sizes[c] = 1;
        copy_row(points, arg, centroids, c);
    }
}

Matrix cluster_means(const Matrix& points, const std::vector<std::size_t>& labels, std::size_t k) {
    Matrix sums(k, points.cols());
    std::vector<std::size_t> sizes(k, 0);
    for (std::size_t i = 0; i < points.rows(); ++i) {
        ++sizes[labels[i]];
        for (std::size_t f = 0; f < points.cols(); ++f) sums(labels[i], f) += points(i, f);
    }
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t f = 0; f < points.cols(); ++f) sums(c, f) /= static_cast<double>(sizes[c]);
    return sums;
}

std::pair<std::vector<std::size_t>, Matrix> lloyd(const Matrix& points, const KMeansConfig& cfg, Rng& rng) {
    Matrix centroids = cfg.init == KMeansInit::kmeanspp ? init_kmeanspp(points, cfg.k, rng)
                                                        : init_random_points(points, cfg.k, rng);
    std::vector<std::size_t> labels(points.rows(), 0);
    [[maybe_unused]] double previous_ss = std::numeric_limits<double>::infinity();
    for (std::size_t iter = 0; iter < cfg.max_iterations; ++iter) {
        assign(points, centroids, labels);
        repair_empty(points, centroids, labels);
        Matrix updated = cluster_means(points, labels, cfg.k);
#ifndef NDEBUG
        const double ss = within_cluster_ss(points, labels, updated);
        assert(ss <= previous_ss * (1.0 + 1e-12) + 1e-12);
        previous_ss = ss;
#endif
        double shift = 0.0;
        for (std::size_t c = 0; c < cfg.k; ++c) shift = std::max(shift, sq_dist(updated.row(c), centroids.row(c)));
        centroids = std::move(updated);
        if (shift <= cfg.tolerance) break;
    }
    assign(points, centroids, labels);
    repair_empty(points, centroids, labels);
    return {std::move(labels), std::move(centroids)};
}

} // namespace

void validate(const KMeansConfig& cfg) {
    if (cfg.k < 2) throw Error(ErrorKind::InvalidConfig, "k must be at least 2");
    if (cfg.max_iterations < 1) throw Error(ErrorKind::InvalidConfig, "max_iterations must be at least 1");
    if (!(cfg.tolerance >= 0.0)) throw Error(ErrorKind::InvalidConfig, "tolerance must be non-negative");
    if (cfg.n_init < 1) throw Error(ErrorKind::InvalidConfig, "n_init must be at least 1");
}

Partition Partition::from_labels(std::vector<std::string> item_ids, std::vector<std::size_t> labels) {
    if (item_ids.size() != labels.size())
        throw Error(ErrorKind::InvalidConfig, "labels and item ids differ in length");
    if (labels.empty()) throw Error(ErrorKind::InvalidConfig, "empty partition");
    const std::size_t k = *std::max_element(labels.begin(), labels.end()) + 1;
    std::vector<bool> used(k, false);
    for (auto l : labels) used[l] = true;
    if (std::find(used.begin(), used.end(), false) != used.end())
        throw Error(ErrorKind::InvalidConfig, "partition has an empty cluster");
    return Partition{std::move(item_ids), std::move(labels), k, Matrix()};
}

std::vector<std::size_t> Partition::cluster_sizes() const {
    std::vector<std::size_t> sizes(k, 0);
    for (auto l : labels) ++sizes[l];
    return sizes;
}

double within_cluster_ss(const Matrix& points, const std::vector<std::size_t>& labels, const Matrix& centroids) {
    double s = 0.0;
    for (std::size_t i = 0; i < points.rows(); ++i) s += sq_dist(points.row(i), centroids.row(labels[i]));
    return s;
}

Partition kmeans(const TimeSlice& slice, const KMeansConfig& cfg) {
    validate(cfg);
    const std::size_t n = slice.matrix.rows();
    if (cfg.k > n)
        throw Error(ErrorKind::InvalidConfig,
                    "k = " + std::to_string(cfg.k) + " exceeds the number of items (" + std::to_string(n) + ")");
    const Matrix points = cfg.standardize ? standardized(slice.matrix) : slice.matrix;
    if (count_distinct(points, cfg.k) < cfg.k)
        throw Error(ErrorKind::DegenerateInput, "fewer than k = " + std::to_string(cfg.k) +
                                                    " distinct points at time " + std::to_string(slice.time_point));

    Rng rng(cfg.seed);
    std::vector<std::size_t> best_labels;
    Matrix best_centroids;
    double best_ss = std::numeric_limits<double>::infinity();
    for (std::size_t start = 0; start < cfg.n_init; ++start) {
        auto [labels, centroids] = lloyd(points, cfg, rng);
        const double ss = within_cluster_ss(points, labels, centroids);
        if (ss < best_ss) {
            best_ss = ss;
            best_labels = std::move(labels);
            best_centroids = std::move(centroids);
        }
    }
    return Partition{slice.item_ids, std::move(best_labels), cfg.k, std::move(best_centroids)};
}

std::vector<Partition> cluster_all(const TemporalDataset& ds, const KMeansConfig& cfg) {
    std::vector<Partition> out;
    out.reserve(ds.n_time_points());
    for (std::size_t t = 0; t < ds.n_time_points(); ++t) out.push_back(kmeans(ds.slice_at(t), cfg));
    return out;
}

bool same_up_to_relabeling(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    if (a.size() != b.size()) return false;
    std::map<std::size_t, std::size_t> forward, backward;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto [f, f_new] = forward.emplace(a[i], b[i]);
        const auto [r, r_new] = backward.emplace(b[i], a[i]);
        if (f->second != b[i] || r->second != a[i]) return false;
    }
    return true;
}

} // namespace driftmeter
