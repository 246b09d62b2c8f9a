#include "cop/cdf.hpp"
#include "cop/errors.hpp"
#include "cop/rng.hpp"
#include "cop/score_window.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace cop;

TEST_CASE("ecdf basics") {
    score_window w(10);
    for (double v : {1.0, 2.0, 3.0, 4.0}) w.push(v);
    CHECK(ecdf_eval(w, 2.5) == doctest::Approx(0.5));
    CHECK(ecdf_eval(w, 0.5) == doctest::Approx(0.0));
    CHECK(ecdf_eval(w, 4.0) == doctest::Approx(1.0));
    score_window empty(3);
    CHECK_THROWS_AS(ecdf_eval(empty, 0.0), estimator_unready_error);
}

TEST_CASE("ecdf concentrates around the true CDF") {
    // 100 iid U(0,1) draws; binomial std at 0.9 is sqrt(0.09/100) = 0.03.
    score_window w(100);
    rng_stream rng(42);
    for (int i = 0; i < 100; ++i) w.push(rng.uniform01());
    CHECK(std::fabs(ecdf_eval(w, 0.9) - 0.9) <= 0.09);
}

TEST_CASE("silverman bandwidth") {
    SUBCASE("unit-dispersion window of 100") {
        score_window w(100);
        rng_stream rng(7);
        for (int i = 0; i < 100; ++i) w.push(rng.normal());
        const double sigma = std::min(w.sample_std(), w.iqr() / 1.34);
        CHECK(silverman_bandwidth(w) ==
              doctest::Approx(0.9 * sigma * std::pow(100.0, -0.2)).epsilon(1e-12));
        // with sigma exactly 1 the rule gives 0.9 * 100^{-1/5}
        CHECK(0.9 * std::pow(100.0, -0.2) == doctest::Approx(0.3582964534981475).epsilon(1e-12));
    }
    SUBCASE("all-equal window hits the floor") {
        score_window w(10);
        for (int i = 0; i < 10; ++i) w.push(3.0);
        const double h = silverman_bandwidth(w);
        CHECK(h <= 1e-8);
        CHECK(h > 0.0);
        // KDE degenerates to a step at the common value
        CHECK(kde_cdf_eval(w, h, 2.9999) == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(kde_cdf_eval(w, h, 3.0001) == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("two-point window, both dispersion measures") {
        score_window w(2);
        w.push(0.0);
        w.push(10.0);
        // sample std sqrt(50) beats IQR/1.34 = 10/1.34 under the
        // order-statistic IQR convention
        CHECK(silverman_bandwidth(w) ==
              doctest::Approx(0.9 * std::sqrt(50.0) * std::pow(2.0, -0.2)).epsilon(1e-12));
        CHECK(silverman_bandwidth(w) == doctest::Approx(5.540149860052124).epsilon(1e-12));
    }
    score_window one(5);
    one.push(1.0);
    CHECK_THROWS_AS(silverman_bandwidth(one), estimator_unready_error);
}

TEST_CASE("kde cdf evaluation") {
    score_window w(5);
    w.push(0.0);
    CHECK(kde_cdf_eval(w, 1.0, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(kde_cdf_eval(w, 1.0, 1.96) == doctest::Approx(0.9750021048517795).epsilon(1e-9));
    CHECK_THROWS_AS(kde_cdf_eval(w, 0.0, 0.0), config_error);
}

TEST_CASE("kde converges to the ecdf as h -> 0") {
    score_window w(50);
    rng_stream rng(11);
    for (int i = 0; i < 50; ++i) w.push(rng.normal());
    // probes kept >= 1e-4 away from every sample
    rng_stream probe_rng(12);
    int probes = 0;
    while (probes < 40) {
        const double x = 3.0 * probe_rng.normal();
        bool clear = true;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (std::fabs(w[i] - x) < 1e-4) clear = false;
        }
        if (!clear) continue;
        ++probes;
        CHECK(std::fabs(kde_cdf_eval(w, 1e-8, x) - ecdf_eval(w, x)) <= 1e-6);
    }
}

TEST_CASE("estimates are monotone in the argument") {
    rng_stream rng(21);
    for (int rep = 0; rep < 10; ++rep) {
        score_window w(30);
        for (int i = 0; i < 30; ++i) w.push(rng.normal() * 2.0);
        const cdf_estimate e = cdf_estimate::ecdf(w);
        const cdf_estimate k = cdf_estimate::gaussian_kde(w);
        std::vector<double> grid;
        for (int i = 0; i < 60; ++i) grid.push_back(rng.normal() * 3.0);
        std::sort(grid.begin(), grid.end());
        for (std::size_t i = 1; i < grid.size(); ++i) {
            CHECK(e(grid[i]) >= e(grid[i - 1]));
            CHECK(k(grid[i]) >= k(grid[i - 1]) - 1e-12);
        }
        CHECK(e(grid.front()) >= 0.0);
        CHECK(e(grid.back()) <= 1.0);
    }
}

TEST_CASE("noisy estimate mixes base with the step draw") {
    score_window w(4);
    for (double v : {1.0, 2.0, 3.0, 4.0}) w.push(v);
    const cdf_estimate base = cdf_estimate::ecdf(w);

    SUBCASE("gamma = 1 is the base") {
        const cdf_estimate n = cdf_estimate::noisy(base, 1.0, 0.77);
        for (double x : {0.0, 2.5, 9.0}) CHECK(n(x) == doctest::Approx(base(x)));
    }
    SUBCASE("gamma = 0 is pure noise, flat in x") {
        const cdf_estimate n = cdf_estimate::noisy(base, 0.0, 0.31);
        CHECK(n(-100.0) == doctest::Approx(0.31));
        CHECK(n(100.0) == doctest::Approx(0.31));
    }
    SUBCASE("mixing arithmetic: gamma 0.5, base 0.8, u 0.2 gives 0.5") {
        score_window five(5);
        for (double v : {1.0, 2.0, 3.0, 4.0, 5.0}) five.push(v);
        const cdf_estimate b5 = cdf_estimate::ecdf(five);
        REQUIRE(b5(4.5) == doctest::Approx(0.8));
        CHECK(noisy_cdf_eval(b5, 0.5, 0.2, 4.5) == doctest::Approx(0.5));
    }
    CHECK_THROWS_AS(cdf_estimate::noisy(base, 1.5, 0.5), config_error);
}
