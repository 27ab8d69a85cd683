#include "driftmeter/clustering.hpp"
#include "driftmeter/error.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <random>

using namespace driftmeter;

namespace {

TimeSlice blobs(std::uint64_t seed, std::size_t per_cluster, double spread) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, spread);
    const double cx[4] = {10, -10, -10, 10};
    const double cy[4] = {10, 10, -10, -10};
    TimeSlice s;
    s.matrix = Matrix(per_cluster * 4, 2);
    for (std::size_t i = 0; i < per_cluster * 4; ++i) {
        s.item_ids.push_back("p" + std::to_string(i));
        s.matrix(i, 0) = cx[i % 4] + noise(rng);
        s.matrix(i, 1) = cy[i % 4] + noise(rng);
    }
    return s;
}

std::vector<std::size_t> blob_truth(std::size_t n) {
    std::vector<std::size_t> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = i % 4;
    return t;
}

} // namespace

TEST_CASE("k-means recovers well separated blobs") {
    for (auto init : {KMeansInit::kmeanspp, KMeansInit::random_points}) {
        KMeansConfig cfg;
        cfg.init = init;
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            cfg.seed = seed;
            const auto s = blobs(seed + 100, 25, 1.0);
            const auto p = kmeans(s, cfg);
            CHECK(p.k == 4);
            CHECK(p.item_ids == s.item_ids);
            CHECK(p.centroids.rows() == 4);
            CHECK(p.centroids.cols() == 2);
            if (init == KMeansInit::kmeanspp) CHECK(same_up_to_relabeling(p.labels, blob_truth(100)));
        }
    }
}

TEST_CASE("k-means is deterministic for a given seed") {
    const auto s = blobs(3, 30, 6.0);
    KMeansConfig cfg;
    cfg.seed = 77;
    const auto a = kmeans(s, cfg);
    const auto b = kmeans(s, cfg);
    CHECK(a.labels == b.labels);
    CHECK(a.centroids == b.centroids);
}

TEST_CASE("k-means leaves no cluster empty and assigns to the nearest centroid") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        TimeSlice s;
        const std::size_t n = 8 + rng() % 40;
        s.matrix = Matrix(n, 3);
        for (std::size_t i = 0; i < n; ++i) {
            s.item_ids.push_back("q" + std::to_string(i));
            for (std::size_t f = 0; f < 3; ++f) s.matrix(i, f) = u(rng);
        }
        KMeansConfig cfg;
        cfg.k = 2 + rng() % 5;
        cfg.seed = rng();
        const auto p = kmeans(s, cfg);
        for (auto size : p.cluster_sizes()) CHECK(size > 0);
        for (std::size_t i = 0; i < n; ++i) {
            auto dist = [&](std::size_t c) {
                double d = 0;
                for (std::size_t f = 0; f < 3; ++f) d += (s.matrix(i, f) - p.centroids(c, f)) * (s.matrix(i, f) - p.centroids(c, f));
                return d;
            };
            for (std::size_t c = 0; c < p.k; ++c) CHECK(dist(p.labels[i]) <= dist(c) + 1e-12);
        }
    }
}

TEST_CASE("k-means needs k distinct points") {
    TimeSlice s;
    s.time_point = 5;
    s.matrix = Matrix(6, 1, 1.0);
    for (std::size_t i = 0; i < 6; ++i) s.item_ids.push_back("d" + std::to_string(i));
    s.matrix(0, 0) = 2.0;
    KMeansConfig cfg;
    cfg.k = 3;
    try {
        kmeans(s, cfg);
        FAIL("expected DegenerateInput");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateInput);
        CHECK(exit_code(e.kind()) == 3);
    }
    cfg.k = 7;
    try {
        kmeans(s, cfg);
        FAIL("expected InvalidConfig");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidConfig);
    }
}

TEST_CASE("k-means configuration is validated") {
    KMeansConfig cfg;
    cfg.k = 1;
    CHECK_THROWS_AS(validate(cfg), Error);
    cfg = {};
    cfg.max_iterations = 0;
    CHECK_THROWS_AS(validate(cfg), Error);
    cfg = {};
    cfg.tolerance = -1.0;
    CHECK_THROWS_AS(validate(cfg), Error);
    CHECK_NOTHROW(validate(KMeansConfig{}));
}

TEST_CASE("standardizing makes the result independent of feature scale") {
    auto s = blobs(9, 20, 2.0);
    auto scaled = s;
    for (std::size_t i = 0; i < s.matrix.rows(); ++i) scaled.matrix(i, 1) *= 1000.0;
    KMeansConfig cfg;
    cfg.standardize = true;
    CHECK(same_up_to_relabeling(kmeans(s, cfg).labels, kmeans(scaled, cfg).labels));
}

TEST_CASE("within-cluster sum of squares") {
    Matrix pts(4, 1);
    pts(0, 0) = 0;
    pts(1, 0) = 2;
    pts(2, 0) = 10;
    pts(3, 0) = 14;
    Matrix c(2, 1);
    c(0, 0) = 1;
    c(1, 0) = 12;
    CHECK(within_cluster_ss(pts, {0, 0, 1, 1}, c) == 10.0);
}

TEST_CASE("partitions from raw labels") {
    const auto p = Partition::from_labels(oracle::ids(5), {2, 0, 1, 2, 2});
    CHECK(p.k == 3);
    CHECK(p.cluster_sizes() == std::vector<std::size_t>{1, 1, 3});
    CHECK_THROWS_AS(Partition::from_labels(oracle::ids(3), {0, 2, 2}), Error);
    CHECK_THROWS_AS(Partition::from_labels(oracle::ids(3), {0, 1}), Error);
    CHECK(same_up_to_relabeling({0, 0, 1, 2}, {2, 2, 0, 1}));
    CHECK_FALSE(same_up_to_relabeling({0, 0, 1, 2}, {2, 2, 2, 1}));
    CHECK_FALSE(same_up_to_relabeling({0, 1, 1, 2}, {2, 2, 0, 1}));
}

TEST_CASE("cluster_all returns one partition per time point") {
    std::vector<double> values;
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t t = 0; t < 3; ++t) values.push_back(i < 4 ? static_cast<double>(i) : 100.0 + i + t);
    const TemporalDataset ds(oracle::ids(8), {1, 2, 3}, {"x"}, values);
    KMeansConfig cfg;
    cfg.k = 2;
    const auto parts = cluster_all(ds, cfg);
    REQUIRE(parts.size() == 3);
    for (const auto& p : parts) CHECK(same_up_to_relabeling(p.labels, {0, 0, 0, 0, 1, 1, 1, 1}));
}
