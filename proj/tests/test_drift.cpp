#include "driftmeter/drift.hpp"
#include "driftmeter/error.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

using namespace driftmeter;

namespace {

std::vector<Partition> parts(const std::vector<std::vector<std::size_t>>& labels) {
    std::vector<Partition> out;
    for (const auto& l : labels) out.push_back(oracle::partition(l));
    return out;
}

} // namespace

TEST_CASE("least squares trend") {
    const auto line = fit_trend({1, 2, 3, 4}, {3, 5, 7, 9});
    CHECK(line.slope == doctest::Approx(2.0));
    CHECK(line.intercept == doctest::Approx(1.0));
    const auto flat = fit_trend({1, 2, 3}, {4, 4, 4});
    CHECK(flat.slope == 0.0);
    CHECK_THROWS_AS(fit_trend({1}, {1}), Error);
    CHECK_THROWS_AS(fit_trend({2, 2}, {1, 3}), Error);
    CHECK_THROWS_AS(fit_trend({1, 2}, {1}), Error);
}

TEST_CASE("first-vs-rest pairs every later time with the first") {
    const auto p = parts({{0, 0, 1, 1}, {0, 0, 1, 1}, {0, 1, 0, 1}});
    DriftConfig cfg;
    const auto s = measure_partitions({10, 20, 30}, p, cfg);
    using C = std::pair<TimeLabel, TimeLabel>;
    CHECK(s.comparisons == std::vector<C>{{10, 20}, {10, 30}});
    CHECK(s.values.at(IndexKind::jaccard) == std::vector<double>{1.0, 0.0});
    CHECK(s.values.at(IndexKind::rand)[0] == 1.0);
    CHECK(s.values.at(IndexKind::rand)[1] == doctest::Approx(1.0 / 3.0));
    CHECK(s.values.at(IndexKind::vi)[0] == 0.0);
    CHECK(s.values.at(IndexKind::vi)[1] == doctest::Approx(2.0));
    CHECK(s.values.at(IndexKind::scaled_vi) == std::vector<double>{1.0, 0.0});
    CHECK(s.values.at(IndexKind::auc)[0] == 1.0);
    CHECK(s.values.at(IndexKind::auc)[1] == 0.5);
    REQUIRE(s.slope(IndexKind::rand));
    CHECK(*s.slope(IndexKind::rand) == doctest::Approx((1.0 / 3.0 - 1.0) / 10.0));
}

TEST_CASE("consecutive mode compares neighbours") {
    const auto p = parts({{0, 0, 1, 1}, {0, 1, 0, 1}, {0, 1, 0, 1}});
    DriftConfig cfg;
    cfg.mode = CompareMode::consecutive;
    cfg.indices = {IndexKind::rand};
    const auto s = measure_partitions({1, 2, 3}, p, cfg);
    using C = std::pair<TimeLabel, TimeLabel>;
    CHECK(s.comparisons == std::vector<C>{{1, 2}, {2, 3}});
    CHECK(s.values.size() == 1);
    CHECK(s.values.at(IndexKind::rand)[1] == 1.0);
}

TEST_CASE("a single comparison has no trend") {
    const auto p = parts({{0, 0, 1, 1}, {0, 1, 0, 1}});
    const auto s = measure_partitions({1, 2}, p, DriftConfig{});
    CHECK(s.comparisons.size() == 1);
    CHECK_FALSE(s.slope(IndexKind::jaccard));
}

TEST_CASE("undefined indices produce a warning") {
    const auto p = parts({{0, 1, 2}, {0, 1, 2}});
    const auto s = measure_partitions({1, 2}, p, DriftConfig{});
    CHECK_FALSE(s.warnings.empty());
}

TEST_CASE("drift configuration and names") {
    DriftConfig cfg;
    cfg.indices = {};
    CHECK_THROWS_AS(validate(cfg), Error);
    cfg.indices = {IndexKind::scaled_vi};
    try {
        validate(cfg);
        FAIL("expected IndexUnavailable");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::IndexUnavailable);
    }
    for (auto k : all_indices) CHECK(parse_index(to_string(k)) == k);
    CHECK(parse_mode("first") == CompareMode::first_vs_rest);
    CHECK(parse_mode("consecutive") == CompareMode::consecutive);
    CHECK_THROWS_AS(parse_index("nope"), Error);
    CHECK_THROWS_AS(parse_mode("nope"), Error);
}

TEST_CASE("k mismatch between time points is reported") {
    const auto p = parts({{0, 0, 1, 1}, {0, 1, 2, 2}});
    DriftConfig cfg;
    try {
        measure_partitions({1, 2}, p, cfg);
        FAIL("expected KMismatch");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::KMismatch);
    }
    cfg.indices = {IndexKind::jaccard, IndexKind::vi};
    CHECK_NOTHROW(measure_partitions({1, 2}, p, cfg));
}

TEST_CASE("measure clusters a dataset end to end") {
    std::vector<double> values;
    // 8 items, 3 times; items 0..3 low and 4..7 high, item 3 crosses over at t3
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t t = 0; t < 3; ++t) {
            const bool high = i >= 4 || (i == 3 && t == 2);
            values.push_back((high ? 50.0 : 0.0) + static_cast<double>(i % 4));
        }
    const TemporalDataset ds(oracle::ids(8), {1, 2, 3}, {"x"}, values);
    DriftConfig cfg;
    cfg.kmeans.k = 2;
    const auto s = measure(ds, cfg);
    CHECK(s.values.at(IndexKind::rand)[0] == 1.0);
    CHECK(s.values.at(IndexKind::rand)[1] < 1.0);
    CHECK(*s.slope(IndexKind::auc) < 0.0);
}
