#include "driftmeter/auc.hpp"
#include "driftmeter/error.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <random>

using namespace driftmeter;

TEST_CASE("alignment recovers a cyclic relabeling") {
    std::vector<std::size_t> ref{0, 0, 1, 1, 2, 2, 3, 3, 3};
    std::vector<std::size_t> shifted(ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) shifted[i] = (ref[i] + 1) % 4;
    const auto a = align(oracle::partition(ref), oracle::partition(shifted));
    CHECK(a.overlap == ref.size());
    for (std::size_t c = 0; c < 4; ++c) CHECK(a.mapping[c] == (c + 3) % 4);
    CHECK(apply_alignment(oracle::partition(shifted), a).labels == ref);
}

TEST_CASE("alignment on a 2x2 table picks the diagonal") {
    // contingency [[5,1],[2,6]]: rows are comparison labels, columns reference labels
    std::vector<std::size_t> ref, cmp;
    auto add = [&](std::size_t c, std::size_t r, int times) {
        for (int i = 0; i < times; ++i) {
            cmp.push_back(c);
            ref.push_back(r);
        }
    };
    add(0, 0, 5);
    add(0, 1, 1);
    add(1, 0, 2);
    add(1, 1, 6);
    const auto a = align(oracle::partition(ref), oracle::partition(cmp));
    CHECK(a.mapping == std::vector<std::size_t>{0, 1});
    CHECK(a.overlap == 11);
    CHECK(oracle::best_overlap_exhaustive(ref, cmp, 2) == 11);
}

TEST_CASE("alignment is optimal against every permutation") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 40; ++trial) {
        const auto r = oracle::random_labels(rng, 30, 4);
        const auto c = oracle::random_labels(rng, 30, 4);
        const auto a = align(oracle::partition(r), oracle::partition(c));
        CHECK(a.overlap == oracle::best_overlap_exhaustive(r, c, 4));
        auto sorted = a.mapping;
        std::sort(sorted.begin(), sorted.end());
        CHECK(sorted == std::vector<std::size_t>{0, 1, 2, 3});
    }
}

TEST_CASE("alignment rejects mismatched cluster counts") {
    try {
        align(oracle::partition({0, 1, 2, 0}), oracle::partition({0, 1, 1, 0}));
        FAIL("expected KMismatch");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::KMismatch);
    }
}

TEST_CASE("binary AUC on the worked examples") {
    const auto perfect = binary_auc({true, true, false, false}, {0.9, 0.8, 0.2, 0.1});
    REQUIRE(perfect);
    CHECK(perfect->auc == 1.0);

    const auto indicator = binary_auc({true, true, false, false}, {1, 0, 1, 0});
    REQUIRE(indicator);
    CHECK(indicator->auc == 0.5);
    using P = std::pair<double, double>;
    CHECK(indicator->points == std::vector<P>{{0.0, 0.0}, {0.5, 0.5}, {1.0, 1.0}});

    const auto inverted = binary_auc({true, false}, {0, 1});
    REQUIRE(inverted);
    CHECK(inverted->auc == 0.0);

    CHECK_FALSE(binary_auc({true, true}, {0.1, 0.2}));
    CHECK_FALSE(binary_auc({false}, {0.1}));
}

TEST_CASE("ROC curve runs from (0,0) to (1,1) with non-decreasing fpr") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<bool> truth(30);
        std::vector<double> scores(30);
        for (std::size_t i = 0; i < 30; ++i) {
            truth[i] = i % 3 == 0;
            scores[i] = std::round(u(rng) * 5.0) / 5.0; // plenty of ties
        }
        const auto roc = binary_auc(truth, scores);
        REQUIRE(roc);
        CHECK(roc->points.front() == std::pair<double, double>{0.0, 0.0});
        CHECK(roc->points.back() == std::pair<double, double>{1.0, 1.0});
        for (std::size_t i = 1; i < roc->points.size(); ++i) CHECK(roc->points[i].first >= roc->points[i - 1].first);
        // tie handling equals the half-credit rank statistic
        CHECK(roc->auc == doctest::Approx(oracle::mann_whitney_auc(truth, scores)).epsilon(1e-12));
    }
}

TEST_CASE("indicator-score AUC is the mean of TPR and TNR") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 4 + rng() % 40;
        std::vector<bool> truth(n);
        std::vector<double> scores(n);
        for (std::size_t i = 0; i < n; ++i) {
            truth[i] = i < 2 ? i == 0 : (rng() & 1) == 1;
            scores[i] = (rng() & 1) ? 1.0 : 0.0;
        }
        double tp = 0, fn = 0, tn = 0, fp = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (truth[i]) (scores[i] == 1.0 ? tp : fn) += 1;
            else (scores[i] == 1.0 ? fp : tn) += 1;
        }
        const auto roc = binary_auc(truth, scores);
        REQUIRE(roc);
        CHECK(roc->auc == doctest::Approx((tp / (tp + fn) + tn / (tn + fp)) / 2.0).epsilon(1e-12));
    }
}

TEST_CASE("multi-class AUC of a partition against itself is 1") {
    const auto p = oracle::partition({0, 1, 2, 3, 0, 1, 2, 3, 3});
    const auto m = multiclass_auc(p, p);
    CHECK(m.value == 1.0);
    CHECK(m.pairs_used == 6);
    CHECK(m.pairs_skipped == 0);
}

TEST_CASE("multi-class AUC with two classes collapses to binary AUC") {
    const std::vector<std::size_t> ref{0, 0, 0, 1, 1, 1, 1};
    const std::vector<std::size_t> cmp{0, 1, 0, 1, 1, 0, 1};
    std::vector<bool> truth;
    std::vector<double> scores;
    for (std::size_t i = 0; i < ref.size(); ++i) {
        truth.push_back(ref[i] == 0);
        scores.push_back(cmp[i] == 0 ? 1.0 : 0.0);
    }
    const auto binary = binary_auc(truth, scores);
    REQUIRE(binary);
    CHECK(multiclass_auc(oracle::partition(ref), oracle::partition(cmp)).value ==
          doctest::Approx(binary->auc).epsilon(1e-12));
}

TEST_CASE("multi-class AUC with one item moved matches the rank-sum oracle") {
    // n = 12, c = 3, the first item of class 0 is placed in class 1
    const std::vector<std::size_t> ref{0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2};
    auto cmp = ref;
    cmp[0] = 1;
    const double got = multiclass_auc(oracle::partition(ref), oracle::partition(cmp)).value;
    CHECK(got < 1.0);
    CHECK(got == doctest::Approx(oracle::hand_till_rank_sum(ref, cmp, 3)).epsilon(1e-12));
    // pairs (0,1): (0.875 + 0.875) / 2, (0,2): (0.875 + 1) / 2, (1,2): 1
    CHECK(got == doctest::Approx((0.875 + 0.9375 + 1.0) / 3.0).epsilon(1e-12));
}

TEST_CASE("aligned multi-class AUC ignores relabeling of the comparison") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t k = 2 + rng() % 5;
        const std::size_t n = k + rng() % 40;
        const auto r = oracle::random_labels(rng, n, k);
        const auto c = oracle::random_labels(rng, n, k);
        const auto base = aligned_multiclass_auc(oracle::partition(r), oracle::partition(c)).value;
        const auto moved = aligned_multiclass_auc(
            oracle::partition(r), oracle::partition(oracle::relabel(c, oracle::random_permutation(rng, k)))).value;
        CHECK(base == moved);
        CHECK(base >= 0.0);
        CHECK(base <= 1.0);
    }
}

TEST_CASE("multi-class AUC skips class pairs with an empty side") {
    // reference built without from_labels so class 2 is empty
    Partition ref{oracle::ids(4), {0, 0, 1, 1}, 3, Matrix()};
    Partition cmp{oracle::ids(4), {0, 0, 1, 1}, 3, Matrix()};
    const auto m = multiclass_auc(ref, cmp);
    CHECK(m.pairs_used == 1);
    CHECK(m.pairs_skipped == 2);
    CHECK(m.value == 1.0);
}
