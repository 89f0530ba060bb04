#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "percolab/theory.hpp"

using namespace percolab;

TEST_SUITE_BEGIN("theory");

TEST_CASE("poisson survival against the independent oracle") {
    for (const double eps : {0.01, 0.1, 0.2, 0.5, 1.0, 2.0}) {
        const SolveResult r = poisson_survival(eps, 1e-13);
        CHECK(std::abs(r.value - oracles::survival_oracle(eps)) <= 1e-12);
        CHECK(r.residual <= 10 * 1e-13);
    }
    // frozen oracle digits
    CHECK(poisson_survival(1.0).value == doctest::Approx(0.796812130020020).epsilon(1e-12));
    CHECK(poisson_survival(0.2).value == doctest::Approx(0.313698331041218).epsilon(1e-12));
}

TEST_CASE("poisson survival near criticality") {
    CHECK(poisson_survival(1e-8).value <= 3e-8);
    const double ratio = poisson_survival(0.01).value / 0.01;
    CHECK(ratio >= 1.9);
    CHECK(ratio <= 2.0);
}

TEST_CASE("poisson survival is strictly increasing") {
    double prev = 0.0;
    for (double eps = 0.05; eps <= 2.0; eps += 0.05) {
        const double y = poisson_survival(eps).value;
        CHECK(y > prev);
        prev = y;
    }
}

TEST_CASE("poisson survival rejects bad input") {
    CHECK_THROWS_AS(poisson_survival(0.0), Error);
    CHECK_THROWS_AS(poisson_survival(-0.1), Error);
    try {
        poisson_survival(-1.0);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NonPositiveEpsilon);
    }
}

TEST_CASE("series F") {
    SUBCASE("frozen value at c = 2") {
        const SeriesResult r = series_F(2.0);
        CHECK(r.value == doctest::Approx(0.203187869979980).epsilon(1e-12));
        CHECK(r.tail_bound < 1e-12);
    }
    SUBCASE("duality identity on a grid") {
        for (const double c : {1.1, 1.5, 2.0, 3.0}) {
            const double sum = series_F(c).value + poisson_survival(c - 1.0).value;
            CHECK(std::abs(sum - 1.0) <= 1e-9);
        }
        for (int i = 0; i < 100; ++i) {
            const double c = 1.05 + i * (5.0 - 1.05) / 99.0;
            const double sum = series_F(c).value + poisson_survival(c - 1.0).value;
            REQUIRE(std::abs(sum - 1.0) <= 1e-9);
        }
    }
    SUBCASE("first term dominates from below") {
        for (const double c : {1.2, 2.0, 4.0}) CHECK(series_F(c).value > std::exp(-c));
    }
    SUBCASE("subcritical mean is reported, not summed") {
        CHECK_THROWS_AS(series_F(1.0), Error);
        try {
            series_F(0.9);
        } catch (const Error& e) {
            CHECK(e.code() == Errc::SubcriticalMean);
        }
    }
}

TEST_CASE("binomial Galton-Watson survival") {
    SUBCASE("degenerate cases") {
        CHECK(binomial_gw_survival(5, 0.0).value == 0.0);
        CHECK(binomial_gw_survival(2, 1.0).value == 1.0);
        CHECK(binomial_gw_survival(10, 1.0).value == 1.0);
        CHECK(binomial_gw_survival(50, 0.016).value == 0.0);  // d*p = 0.8
        CHECK(binomial_gw_survival(1, 1.0).value == 0.0);     // d*p = 1, critical
    }
    SUBCASE("closed-form quadratic at d = 2") {
        // rho solves 0.81 rho^2 - 0.82 rho + 0.01 = 0; smallest root 1/81
        const double disc = std::sqrt(0.82 * 0.82 - 4 * 0.81 * 0.01);
        const double rho = (0.82 - disc) / (2 * 0.81);
        const SolveResult r = binomial_gw_survival(2, 0.9, 1e-13);
        CHECK(r.value == doctest::Approx(1.0 - rho).epsilon(1e-12));
        CHECK(r.value == doctest::Approx(0.987654320987654).epsilon(1e-12));
    }
    SUBCASE("poisson limit at matched mean") {
        const double bin = binomial_gw_survival(1000000, 1.2 / 1000000.0).value;
        CHECK(std::abs(bin - poisson_survival(0.2).value) <= 1e-5);
    }
    SUBCASE("binomial stays within 2e-2 of poisson for d >= 50") {
        for (const std::uint32_t d : {50u, 100u, 400u}) {
            for (const double mean : {1.1, 1.2, 1.5, 2.0}) {
                const double bin = binomial_gw_survival(d, mean / d).value;
                const double po = poisson_survival(mean - 1.0).value;
                REQUIRE(std::abs(bin - po) <= 2e-2);
            }
        }
    }
    SUBCASE("rejects bad input") {
        CHECK_THROWS_AS(binomial_gw_survival(0, 0.5), Error);
        CHECK_THROWS_AS(binomial_gw_survival(5, -0.1), Error);
        CHECK_THROWS_AS(binomial_gw_survival(5, 1.1), Error);
    }
}

TEST_SUITE_END();
