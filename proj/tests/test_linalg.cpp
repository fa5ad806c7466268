#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tgrass/error.hpp"
#include "tgrass/linalg.hpp"
#include "tgrass/rng.hpp"

using namespace tgrass;
using namespace tgrass::linalg;

namespace {

// Real roots of det(A - x I) for a symmetric 3x3, via the trigonometric cubic solution.
std::array<double, 3> char_poly_roots(const SymMatrix& a) {
    const double tr = a(0, 0) + a(1, 1) + a(2, 2);
    const double c2 = a(0, 0) * a(1, 1) + a(0, 0) * a(2, 2) + a(1, 1) * a(2, 2) - a(0, 1) * a(0, 1) -
                      a(0, 2) * a(0, 2) - a(1, 2) * a(1, 2);
    const double det = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(1, 2)) -
                       a(0, 1) * (a(0, 1) * a(2, 2) - a(1, 2) * a(0, 2)) +
                       a(0, 2) * (a(0, 1) * a(1, 2) - a(1, 1) * a(0, 2));
    // x^3 - tr x^2 + c2 x - det = 0; substitute x = y + tr/3.
    const double s = tr / 3.0;
    const double p = c2 - tr * tr / 3.0;
    const double q = -2.0 * s * s * s + c2 * s - det;
    const double r = 2.0 * std::sqrt(-p / 3.0);
    const double phi = std::acos(std::clamp(3.0 * q / (p * r), -1.0, 1.0)) / 3.0;
    std::array<double, 3> roots{};
    for (int k = 0; k < 3; ++k) roots[k] = s + r * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0);
    std::sort(roots.begin(), roots.end());
    return roots;
}

SymMatrix random_pd(std::size_t p, std::uint64_t seed) {
    RngStream rng(seed);
    std::vector<double> b(p * p);
    for (auto& v : b) v = rng.standard_normal();
    SymMatrix m(p);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i; j < p; ++j) {
            double s = (i == j) ? 0.5 : 0.0;
            for (std::size_t k = 0; k < p; ++k) s += b[i * p + k] * b[j * p + k];
            m.set(i, j, s);
        }
    return m;
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("eig_extremes on identity and diagonal") {
    auto e = eig_extremes(SymMatrix::identity(3));
    CHECK(e.lambda_min == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(e.lambda_max == doctest::Approx(1.0).epsilon(1e-14));
    const double d[] = {1.0, 2.0, 5.0};
    e = eig_extremes(SymMatrix::diagonal(d));
    CHECK(e.lambda_min == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(e.lambda_max == doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("eig_extremes matches characteristic polynomial roots") {
    const auto m = SymMatrix::from_rows({{1, 0.3, 0.09}, {0.3, 1, 0.3}, {0.09, 0.3, 1}});
    const auto roots = char_poly_roots(m);
    const auto e = eig_extremes(m);
    CHECK(std::abs(e.lambda_min - roots[0]) < 1e-12);
    CHECK(std::abs(e.lambda_max - roots[2]) < 1e-12);
}

TEST_CASE("invert_pd") {
    CHECK(invert_pd(SymMatrix::identity(4)) == SymMatrix::identity(4));
    const double d[] = {2.0, 4.0};
    const auto inv = invert_pd(SymMatrix::diagonal(d));
    CHECK(inv(0, 0) == doctest::Approx(0.5));
    CHECK(inv(1, 1) == doctest::Approx(0.25));
    CHECK(inv(0, 1) == 0.0);

    const auto m = random_pd(5, 11);
    CHECK(inverse_residual(m, invert_pd(m)) < 1e-10);
}

TEST_CASE("invert_pd rejects singular input") {
    const auto m = SymMatrix::from_rows({{1, 1}, {1, 1}});
    CHECK_THROWS_AS(invert_pd(m), SingularMatrix);
}

TEST_CASE("cholesky") {
    const auto li = cholesky(SymMatrix::identity(3));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(li(i, j) == (i == j ? 1.0 : 0.0));

    const auto l = cholesky(SymMatrix::from_rows({{4, 2}, {2, 5}}));
    CHECK(l(0, 0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(l(0, 1) == 0.0);
    CHECK(l(1, 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(l(1, 1) == doctest::Approx(2.0).epsilon(1e-15));

    const double nine[] = {9.0};
    CHECK(cholesky(SymMatrix::diagonal(nine))(0, 0) == doctest::Approx(3.0));

    const auto bad = SymMatrix::from_rows({{1, 2}, {2, 1}});
    CHECK_THROWS_AS(cholesky(bad), SingularMatrix);
}

TEST_CASE("cholesky reproduces the matrix") {
    const auto m = random_pd(6, 3);
    const auto l = cholesky(m);
    double worst = 0.0;
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < 6; ++k) s += l(i, k) * l(j, k);
            worst = std::max(worst, std::abs(s - m(i, j)));
        }
    CHECK(worst < 1e-12);
}

TEST_CASE("rescale_to_unit_diagonal") {
    const auto corr = SymMatrix::from_rows({{1, 0.4, -0.2}, {0.4, 1, 0.1}, {-0.2, 0.1, 1}});
    CHECK(rescale_to_unit_diagonal(corr).max_abs_diff(corr) < 1e-12);

    const double d[] = {4.0, 9.0};
    CHECK(rescale_to_unit_diagonal(SymMatrix::diagonal(d)) == SymMatrix::identity(2));

    const auto r = rescale_to_unit_diagonal(SymMatrix::from_rows({{4, 1}, {1, 9}}));
    CHECK(r(0, 0) == 1.0);
    CHECK(r(1, 1) == 1.0);
    CHECK(r(0, 1) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("from_rows rejects asymmetric input") {
    CHECK_THROWS_AS(SymMatrix::from_rows({{1, 0.5}, {0.4, 1}}), InvalidInput);
    CHECK_NOTHROW(SymMatrix::from_rows({{1, 0.5}, {0.5 + 1e-13, 1}}, 1e-12));
}

}
