#include "doctest.h"

#include <cmath>
#include <numbers>

#include "grs/seed.hpp"

using namespace grs;

namespace {

// (-1)^j / (2^j (2j+1)!), the coefficients of sqrt2 sin(t/sqrt2) / t.
double brf_coeff(int j) {
    double c = 1.0;
    for (int i = 1; i <= j; ++i) {
        c /= -2.0 * (2 * i) * (2 * i + 1);
    }
    return c;
}

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

}  // namespace

TEST_CASE("l_matrix values") {
    const Mat2 l0 = l_matrix(0);
    CHECK(l0[0][0] == 6.0);
    CHECK(l0[0][1] == -1.0);
    CHECK(l0[1][0] == 6.0);
    CHECK(l0[1][1] == -1.0);
    CHECK(det(l0) == 0.0);

    const Mat2 l1 = l_matrix(1);
    CHECK(l1[0][0] == doctest::Approx(2.5));
    CHECK(l1[0][1] == doctest::Approx(-1.0 / 3.0));
    CHECK(l1[1][0] == doctest::Approx(5.0 / 3.0));
    CHECK(l1[1][1] == doctest::Approx(1.0 / 3.0));
    CHECK(det(l1) == doctest::Approx(25.0 / 18.0));

    for (int n = 1; n <= 12; ++n) {
        CHECK(det(l_matrix(n)) > 0.0);
    }
    const Mat2 big = l_matrix(2000);
    CHECK(std::abs(big[0][0] - 1.0) < 5e-3);
    CHECK(std::abs(big[1][1] - 1.0) < 5e-3);
    CHECK(std::abs(big[0][1]) < 5e-3);
    CHECK(std::abs(big[1][0]) < 5e-3);
}

TEST_CASE("l_matrix is the linearization of the recursion") {
    // Perturbing the degree-m pair by d moves the residual of degree m by
    // m(m-1) L_{(m-2)/2} d.
    const SolitonParams p = SolitonParams::from_q(-47.0 / 12.0);
    const SeedExpansion seed = compute_seed(p);
    for (int m : {4, 6, 10}) {
        const double d = 1e-6;
        for (int comp = 0; comp < 2; ++comp) {
            TruncSeries a = seed.a_series();
            TruncSeries f = seed.f_series();
            (comp == 0 ? a : f)[static_cast<std::size_t>(m)] += d;
            const auto e = reduced_residual_series(a, f, p.c2());
            const Mat2 l = l_matrix((m - 2) / 2);
            const double scale = m * (m - 1) * d;
            CHECK(e[0][static_cast<std::size_t>(m)] ==
                  doctest::Approx(scale * l[0][comp]).epsilon(1e-6));
            CHECK(e[1][static_cast<std::size_t>(m)] ==
                  doctest::Approx(scale * l[1][comp]).epsilon(1e-6));
        }
    }
}

TEST_CASE("seed reproduces the exact solution at q = -1/2") {
    const SolitonParams p = SolitonParams::from_q(-0.5);
    const SeedExpansion seed = compute_seed(p);
    REQUIRE(seed.order() == 24);
    for (int m = 0; m <= 24; ++m) {
        const double expected = m % 2 == 0 ? brf_coeff(m / 2) : 0.0;
        CHECK(std::abs(seed.a_series()[static_cast<std::size_t>(m)] - expected) <= 1e-12);
        CHECK(std::abs(seed.f_series()[static_cast<std::size_t>(m)]) <= 1e-12);
    }
    CHECK(seed.a_series()[2] == doctest::Approx(-1.0 / 12.0));
    CHECK(seed.a_series()[4] == doctest::Approx(1.0 / 480.0));
    // phi^(5)(0) = 5! a_4
    CHECK(factorial(5) * seed.a_series()[4] == doctest::Approx(0.25).epsilon(1e-12));

    const double t = 1e-3;
    const SolitonState s = eval_seed(seed, t);
    const double exact = std::numbers::sqrt2 * std::sin(t / std::numbers::sqrt2);
    CHECK(std::abs(s.phi - exact) <= 1e-15 * exact);
    const auto [r_phi, r_f] = seed_residual(seed, t);
    CHECK(std::abs(r_phi) <= 1e-12);
    CHECK(std::abs(r_f) <= 1e-12);
}

TEST_CASE("low-order coefficients and evenness") {
    for (double q : {-47.0 / 12.0, -4.0, -1.0, 0.3}) {
        for (double k : {0.0, kTorsionSqrt2}) {
            SolitonParams p = SolitonParams::from_q(q);
            p.k = k;
            const SeedExpansion seed = compute_seed(p);
            CHECK(seed.a_series()[0] == 1.0);
            CHECK(seed.f_series()[0] == 0.0);
            CHECK(seed.a_series()[2] == doctest::Approx(q / 6.0));
            CHECK(seed.f_series()[2] == doctest::Approx((2.0 * q + p.c2()) / 2.0));
            CHECK(seed.a_series().is_even());
            CHECK(seed.f_series().is_even());
        }
    }
    const SeedExpansion s = compute_seed(SolitonParams::from_q(-47.0 / 12.0));
    CHECK(s.a_series()[2] == doctest::Approx(-47.0 / 72.0));
}

TEST_CASE("seed state near the origin") {
    const double q = -47.0 / 12.0;
    const SeedExpansion seed = compute_seed(SolitonParams::from_q(q));
    const double t = 1e-3;
    const SolitonState s = eval_seed(seed, t);
    CHECK(s.dphi == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(std::abs(s.df) < 1e-2);
    CHECK(s.f == doctest::Approx(0.5 * (2.0 * q + 1.0) * t * t).epsilon(1e-5));
    const auto [r_phi, r_f] = seed_residual(seed, t);
    CHECK(std::abs(r_phi) <= 1e-10);
    CHECK(std::abs(r_f) <= 1e-10);
    // Regression baseline at the default order (measured -1.7e-18, -1.8e-15).
    CHECK(std::abs(r_phi) <= 1e-17);
    CHECK(std::abs(r_f) <= 1e-14);
}

TEST_CASE("residual exponent for odd and even truncation") {
    auto exponent = [](double q, int order, double t) {
        SolitonParams p = SolitonParams::from_q(q);
        p.series_order = order;
        const SeedExpansion seed = compute_seed(p);
        const double hi = std::abs(seed_residual(seed, t).second);
        const double lo = std::abs(seed_residual(seed, t / 10.0).second);
        return std::log10(hi / lo);
    };
    for (double q : {-47.0 / 12.0, -4.0}) {
        for (int n : {7, 9, 11}) {
            CHECK(std::abs(exponent(q, n, 0.2) - (n - 1)) <= 0.5);
        }
        // Even truncation drops a zero coefficient, so the residual gains a degree.
        for (int n : {8, 10}) {
            CHECK(std::abs(exponent(q, n, 0.2) - n) <= 0.5);
        }
    }
}

TEST_CASE("radial parameter behaves like log t") {
    const SeedExpansion seed = compute_seed(SolitonParams::from_q(-0.5));
    // Exact primitive of 1/(sqrt2 sin(t/sqrt2)) normalized like log t at 0.
    for (double t : {1e-3, 1e-2, 0.05}) {
        const double exact = std::log(2.0 * std::numbers::sqrt2 *
                                      std::tan(t / (2.0 * std::numbers::sqrt2)));
        CHECK(seed.radial_parameter(t) == doctest::Approx(exact).epsilon(1e-14));
    }
}

TEST_CASE("compute_seed validates parameters") {
    SolitonParams p = SolitonParams::from_q(-4.0);
    p.k = 1.0;
    CHECK_THROWS_AS(compute_seed(p), std::invalid_argument);
    p = SolitonParams::from_q(-4.0);
    p.eps_handoff = 0.5;
    CHECK_THROWS_AS(compute_seed(p), std::invalid_argument);
    p = SolitonParams::from_q(-4.0);
    p.ell = 0.0;
    CHECK_THROWS_AS(compute_seed(p), std::invalid_argument);
}
