#include <doctest.h>

#include <cmath>

#include "tgrass/diagnostics.hpp"
#include "tgrass/error.hpp"

using namespace tgrass;
using namespace tgrass::diag;

TEST_SUITE("diagnostics") {

TEST_CASE("simulation B has no non-edge correlation") {
    RngStream rng(3);
    const auto gt = sim::gen_precision_B(50, rng);
    const auto r = check_assumptions(gt, AssumptionParams{});
    CHECK(r.max_nonedge_corr == 0.0);
    CHECK(r.nonedge_surrogate == 0.0);
    CHECK(r.nonedge_small);
}

TEST_CASE("simulation C satisfies the minimum-correlation assumption") {
    AssumptionParams p;
    p.n = 100;
    p.c1 = 0.3;
    p.kappa = 0.25;
    const auto r = check_assumptions(sim::gen_correlation_C(20), p);
    REQUIRE(r.min_edge_corr.has_value());
    CHECK(*r.min_edge_corr == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(r.min_corr_bound == doctest::Approx(0.3 * std::pow(100.0, -0.25)).epsilon(1e-14));
    CHECK(r.min_corr_bound == doctest::Approx(0.0949).epsilon(1e-3));
    CHECK(r.min_corr_holds);
}

TEST_CASE("identity correlation") {
    const auto gt = sim::ground_truth_from_precision(linalg::SymMatrix::identity(5), sim::Scenario::A);
    const auto a = check_assumptions(gt, AssumptionParams{});
    CHECK(a.beta == doctest::Approx(1.0));
    CHECK(a.nu == doctest::Approx(1.0));
    CHECK_FALSE(a.min_edge_corr.has_value());
    CHECK(a.min_corr_holds);

    const auto p1 = check_proposition1(gt, 100, 0.6, 0.25, 0.3);
    CHECK(p1.beta_within_bound);
    CHECK_FALSE(p1.beta_above_one);
    CHECK_FALSE(p1.beta_condition);
    CHECK_FALSE(p1.notes.empty());
}

TEST_CASE("proposition 1 on simulation D") {
    const auto gt = sim::gen_precision_D(100);
    const auto r = check_proposition1(gt, 100, 0.6, 0.25, 0.3);
    CHECK(std::isfinite(r.beta));
    CHECK(std::isfinite(r.beta_bound));
    CHECK(std::isfinite(r.nu));
    CHECK(std::isfinite(r.sample_size_bound));
    CHECK(std::isfinite(r.scaled_precision_bound));
    REQUIRE(r.min_scaled_precision.has_value());
    CHECK(std::isfinite(*r.min_scaled_precision));
    // hand check of the bound: ((2/0.6)^(1/0.45))
    CHECK(r.sample_size_bound == doctest::Approx(std::pow(2.0 / 0.6, 1.0 / 0.45)));
}

TEST_CASE("sample-size condition") {
    const auto gt = sim::gen_correlation_C(10);
    const double bound = std::pow(2.0 / 0.6, 1.0 / (1.0 - 0.3 - 0.25));
    const auto below = check_proposition1(gt, std::size_t(bound) - 1, 0.6, 0.25, 0.3);
    CHECK_FALSE(below.sample_size_condition);
    CHECK_FALSE(below.implies_min_corr);
    const auto above = check_proposition1(gt, std::size_t(bound) + 1, 0.6, 0.25, 0.3);
    CHECK(above.sample_size_condition);
}

TEST_CASE("neighborhood bound") {
    CHECK(neighborhood_size_bound(1.0, 100, 3.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    double prev = 0.0;
    for (std::size_t n : {10, 50, 100, 500, 1000}) {
        const double b = neighborhood_size_bound(2.0, n, 0.5, 0.2);
        CHECK(b > prev);
        prev = b;
    }
    const auto gt = sim::gen_correlation_C(50);
    const double bound = neighborhood_size_bound(gt, 100, 0.3, 0.25);
    std::vector<std::size_t> degree(50, 0);
    for (const auto& e : gt.edges.edges()) ++degree[e.first], ++degree[e.second];
    for (auto d : degree) CHECK(double(d) <= bound);
}

TEST_CASE("hoeffding bound") {
    CHECK(hoeffding_bound(100, 1e-9) == 1.0);
    CHECK(hoeffding_bound(100, 0.2) == doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-14));
    CHECK(hoeffding_bound(100, 0.2) == doctest::Approx(0.7358).epsilon(1e-4));
    CHECK(hoeffding_bound(1000, 0.2) == doctest::Approx(9.08e-5).epsilon(1e-3));
    CHECK(hoeffding_bound(101, 0.2) == hoeffding_bound(100, 0.2));
    CHECK_THROWS_AS(hoeffding_bound(100, 0.0), InvalidInput);
}

TEST_CASE("Greiner relation") {
    CHECK(tau_from_rho(0.0) == 0.0);
    CHECK(tau_from_rho(1.0) == doctest::Approx(1.0));
    CHECK(tau_from_rho(0.5) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("tau exceedance is deterministic and below the bound") {
    RngStream a(1), b(1);
    const std::vector<double> ts{0.1, 0.2};
    const auto fa = tau_exceedance(50, 0.3, ts, 300, a);
    CHECK(fa == tau_exceedance(50, 0.3, ts, 300, b));
    CHECK(fa[0] >= fa[1]);
    for (std::size_t i = 0; i < ts.size(); ++i) CHECK(fa[i] <= hoeffding_bound(50, ts[i]));
}

TEST_CASE("normality check") {
    RngStream rng(2);
    const auto r0 = normality_check(500, 0.0, 1000, rng);
    CHECK(std::abs(r0.mean) < 0.1);
    CHECK(r0.variance >= 0.85);
    CHECK(r0.variance <= 1.15);
    RngStream a(5), b(5);
    const auto x = normality_check(50, 0.5, 100, a);
    const auto y = normality_check(50, 0.5, 100, b);
    CHECK(x.mean == y.mean);
    CHECK(x.variance == y.variance);
}

TEST_CASE("parameter validation") {
    AssumptionParams p;
    p.kappa = 0.6;
    CHECK_THROWS_AS(p.validate(), InvalidInput);
    p = {};
    p.xi = 0.6;  // needs xi < 1 - 2 kappa = 0.5
    CHECK_THROWS_AS(p.validate(), InvalidInput);
}

}
