#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tgrass/error.hpp"
#include "tgrass/screening.hpp"

using namespace tgrass;
using linalg::SymMatrix;

namespace {

CorrMatrix example3() {
    auto m = SymMatrix::identity(3);
    m.set(0, 1, 0.6);
    m.set(0, 2, 0.2);
    m.set(1, 2, -0.7);
    return CorrMatrix(m, CorrKind::KendallSine);
}

SymMatrix constant_threshold(std::size_t p, double g) {
    return threshold_matrix(ThresholdSpec::fixed(g), 10, p).values;
}

}  // namespace

TEST_SUITE("screening") {

TEST_CASE("EdgeSet validation") {
    const EdgeSet e(4, {{2, 3}, {0, 1}});
    CHECK(e.edges().front() == Edge{0, 1});
    CHECK(e.contains(3, 2));
    CHECK_FALSE(e.contains(0, 2));
    CHECK_THROWS_AS(EdgeSet(3, {{1, 1}}), InvalidInput);
    CHECK_THROWS_AS(EdgeSet(3, {{0, 3}}), InvalidInput);
    CHECK_THROWS_AS(EdgeSet(3, {{0, 1}, {0, 1}}), InvalidInput);
    CHECK(is_subset(EdgeSet(4, {{0, 1}}), e));
    CHECK_FALSE(is_subset(EdgeSet(4, {{0, 2}}), e));
}

TEST_CASE("rate threshold") {
    const auto t = threshold_matrix(ThresholdSpec::rate(0.6, 0.25), 16, 4);
    CHECK(t.values(0, 3) == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(t.values(1, 1) == 0.0);
    CHECK_FALSE(t.f_used.has_value());
}

TEST_CASE("fpr threshold with unit jackknife variance") {
    SymMatrix jack(3, 1.0);
    for (std::size_t j = 0; j < 3; ++j) jack.set(j, j, 0.0);
    // f / (p(p-1)) = 0.15 / 6 = 0.025
    const auto t = threshold_matrix(ThresholdSpec::fpr_f(0.15), 100, 3, &jack);
    CHECK(t.values(0, 1) == doctest::Approx(0.30787).epsilon(1e-5));
    CHECK(t.values(0, 1) == doctest::Approx(std::numbers::pi / 2 * 1.959963984540054 / 10).epsilon(1e-13));
    REQUIRE(t.f_used.has_value());
    CHECK(*t.f_used == 0.15);
}

TEST_CASE("fpr q normalization conventions") {
    SymMatrix jack(4, 0.5);
    const auto all = threshold_matrix(ThresholdSpec::fpr_q(0.1), 50, 4, &jack);
    CHECK(*all.f_used == doctest::Approx(0.6));
    CHECK(all.normalization == FprNormalization::AllPairs);
    const auto ne = threshold_matrix(ThresholdSpec::fpr_q(0.1), 50, 4, &jack, std::size_t{4});
    CHECK(*ne.f_used == doctest::Approx(0.4));
    CHECK(ne.normalization == FprNormalization::NonEdges);
    CHECK(ne.values(0, 1) > all.values(0, 1));
}

TEST_CASE("fpr threshold errors") {
    SymMatrix jack(3, 1.0);
    CHECK_THROWS_AS(threshold_matrix(ThresholdSpec::fpr_q(0.1), 100, 3), MissingInput);
    CHECK_THROWS_AS(threshold_matrix(ThresholdSpec::fpr_q(0.1), 2, 3, &jack), InvalidInput);
    CHECK_THROWS_AS(threshold_matrix(ThresholdSpec::fpr_f(3.0), 100, 3, &jack), InvalidInput);
    CHECK_THROWS_AS(ThresholdSpec::fpr_q(0.0), InvalidInput);
    CHECK_THROWS_AS(ThresholdSpec::fixed(-0.1), InvalidInput);
}

TEST_CASE("zero jackknife variance is reported") {
    SymMatrix jack(3, 1.0);
    jack.set(0, 1, 0.0);
    const auto t = threshold_matrix(ThresholdSpec::fpr_q(0.1), 20, 3, &jack);
    CHECK(t.values(0, 1) == 0.0);
    CHECK(t.warnings.size() == 1);
}

TEST_CASE("fixed threshold") {
    const auto t = constant_threshold(5, 0.5);
    for (std::size_t j = 0; j < 5; ++j)
        for (std::size_t k = 0; k < 5; ++k)
            if (j != k) CHECK(t(j, k) == 0.5);
}

TEST_CASE("screen_edges") {
    const auto c = example3();
    CHECK(screen_edges(c, constant_threshold(3, 0.5)) == EdgeSet(3, {{0, 1}, {1, 2}}));
    CHECK(screen_edges(c, constant_threshold(3, 1.1)).size() == 0);
    CHECK(screen_edges(c, constant_threshold(3, 0.0)).size() == 3);
    CHECK(screen_edges(c, constant_threshold(3, 0.6)) == EdgeSet(3, {{1, 2}}));
}

TEST_CASE("screen_neighborhood") {
    const auto c = example3();
    const auto t = constant_threshold(3, 0.5);
    CHECK(screen_neighborhood(c, t, 1) == std::vector<std::size_t>{0, 2});
    CHECK(screen_neighborhood(c, constant_threshold(3, 0.9), 0).empty());
    for (std::size_t j = 0; j < 3; ++j) {
        const auto nb = screen_neighborhood(c, constant_threshold(3, 0.0), j);
        CHECK(std::find(nb.begin(), nb.end(), j) == nb.end());
    }
}

TEST_CASE("raw kendall is not a screening input") {
    CorrMatrix raw(SymMatrix::identity(2), CorrKind::KendallRaw);
    CHECK_THROWS_AS(screen_edges(raw, constant_threshold(2, 0.5)), InvalidInput);
}

TEST_CASE("connected_components") {
    const auto empty = connected_components(EdgeSet(4));
    CHECK(empty.component_count() == 4);
    const auto chain = connected_components(EdgeSet(4, {{0, 1}, {1, 2}}));
    CHECK(chain.component_count() == 2);
    CHECK(chain.component_id() == std::vector<std::size_t>{1, 1, 1, 2});
    std::vector<Edge> all;
    for (std::size_t j = 0; j < 6; ++j)
        for (std::size_t k = j + 1; k < 6; ++k) all.push_back({j, k});
    CHECK(connected_components(EdgeSet(6, all)).component_count() == 1);
    CHECK(connected_components(EdgeSet(5, {{3, 4}, {0, 4}})).component_id() ==
          std::vector<std::size_t>{1, 2, 3, 1, 1});
}

TEST_CASE("compare_partitions") {
    const Partition a({1, 1, 2, 3});
    CHECK(compare_partitions(a, a));
    CHECK(compare_partitions(a, Partition({3, 3, 1, 2})));
    CHECK_FALSE(compare_partitions(Partition({1, 1, 2}), Partition({1, 2, 2})));
    CHECK_THROWS_AS(compare_partitions(Partition({1, 1}), Partition({1, 1, 1})), InvalidInput);
    CHECK_THROWS_AS(Partition({1, 3}), InvalidInput);
    CHECK_THROWS_AS(Partition({0, 1}), InvalidInput);
}

}
