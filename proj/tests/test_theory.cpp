#include "cop/certification.hpp"
#include "cop/errors.hpp"
#include "cop/rng.hpp"
#include "cop/theory.hpp"

#include <doctest.h>

#include <cmath>

using namespace cop;

TEST_CASE("quantile loss") {
    CHECK(quantile_loss(0.1, 1.0) == doctest::Approx(0.9));
    CHECK(quantile_loss(0.1, 0.0) == doctest::Approx(0.0));
    CHECK(quantile_loss(0.1, -2.0) == doctest::Approx(0.2));
    CHECK_THROWS_AS(quantile_loss(1.0, 0.5), config_error);

    // convexity: midpoint inequality on random triples
    rng_stream rng(3);
    for (int i = 0; i < 200; ++i) {
        const double a = 0.01 + 0.98 * rng.uniform01();
        const double r1 = 10.0 * (rng.uniform01() - 0.5);
        const double r2 = 10.0 * (rng.uniform01() - 0.5);
        const double mid = quantile_loss(a, 0.5 * (r1 + r2));
        CHECK(mid <= 0.5 * (quantile_loss(a, r1) + quantile_loss(a, r2)) + 1e-12);
    }
}

TEST_CASE("coverage bound on a constant-rate run shrinks like 1/T") {
    certification_run_options opt;
    opt.length = 4000;
    opt.seed = 9;
    opt.schedule = rate_schedule::constant;
    opt.eta_constant = 0.2;
    const tracker_run run = adversarial_cop_run(opt);
    const bound_report report = check_coverage_bound(run);
    CHECK(report.satisfied);
    // rhs at T is (B + (2+6M) eta) / (T eta): T doubling halves it
    const double rhs_2000 = report.prefixes[1999].rhs;
    const double rhs_4000 = report.prefixes[3999].rhs;
    CHECK(rhs_4000 == doctest::Approx(0.5 * rhs_2000).epsilon(1e-9));
    // and the miscoverage rate is inside the bound at the full horizon
    CHECK(report.prefixes.back().lhs <= report.prefixes.back().rhs);
}

TEST_CASE("coverage bound rhs matches the closed form for eta_1/sqrt(t)") {
    // for decaying rates eta_t = eta_1/sqrt(t): Omega_T = eta_1 and
    // ||Delta||_1 telescopes to 1/eta_T
    const double eta1 = 0.7;
    const std::int64_t length = 600;
    tracker_config cfg;
    cfg.variant = tracker_variant::cop;
    cfg.alpha = 0.1;
    cfg.schedule = rate_schedule::explicit_rates;
    for (std::int64_t t = 1; t <= length; ++t) {
        cfg.explicit_rate_values.push_back(eta1 / std::sqrt(static_cast<double>(t)));
    }
    quantile_tracker tracker(cfg);
    rng_stream rng(4);
    double b = 0.0;
    for (std::int64_t t = 0; t < length; ++t) {
        const double s = rng.uniform01() * 3.0;
        b = std::max(b, s);
        tracker.observe(s);
    }
    const bound_report report = check_coverage_bound(tracker.run());
    const double m = optimistic_bound(0.1);
    const double eta_t = eta1 / std::sqrt(static_cast<double>(length));
    const double expected =
        (b + (2.0 + 6.0 * m) * eta1) / static_cast<double>(length) / eta_t;
    CHECK(report.prefixes.back().rhs == doctest::Approx(expected).epsilon(1e-9));
    CHECK(report.satisfied);
}

TEST_CASE("boundedness holds on the constructed worst cases") {
    SUBCASE("all-miss pushes the radius up to at most B + Omega(2M+1)") {
        const tracker_run run = worst_case_run(true, 800, 5.0);
        const bound_report report = check_boundedness(run);
        CHECK(report.satisfied);
        double top = -1e300;
        for (const auto& s : run.steps) top = std::max(top, s.q);
        CHECK(top > 4.9); // the adversary really does drive it to the ceiling
    }
    SUBCASE("all-cover drags the radius just below zero") {
        const tracker_run run = worst_case_run(false, 800, 5.0);
        const bound_report report = check_boundedness(run);
        CHECK(report.satisfied);
        double bottom = 1e300;
        for (const auto& s : run.steps) bottom = std::min(bottom, s.q);
        CHECK(bottom < 0.0);
        CHECK(bottom >= -report.prefixes.back().rhs);
    }
}

TEST_CASE("regret-coverage bound on a degenerate stream and plain ogd") {
    SUBCASE("all scores zero, zero comparator") {
        tracker_config cfg;
        cfg.variant = tracker_variant::cop;
        cfg.alpha = 0.1;
        cfg.schedule = rate_schedule::constant;
        cfg.eta_base = 0.3;
        quantile_tracker tracker(cfg);
        for (int t = 0; t < 200; ++t) tracker.observe(0.0);
        comparator_sequence zero;
        zero.u.assign(200, 0.0);
        const bound_report report = check_regret_coverage(tracker.run(), zero, 0.3);
        CHECK(report.satisfied);
        CHECK(report.slack >= 0.0);
    }
    SUBCASE("plain ogd (m = 0) also satisfies the bound") {
        tracker_config cfg;
        cfg.variant = tracker_variant::ogd;
        cfg.alpha = 0.1;
        cfg.schedule = rate_schedule::constant;
        cfg.eta_base = 0.15;
        quantile_tracker tracker(cfg);
        rng_stream rng(8);
        for (int t = 0; t < 1000; ++t) tracker.observe(rng.uniform01() * 2.0);
        const bound_report report =
            check_regret_coverage(tracker.run(), rolling_quantile_comparator(tracker.run()), 0.15);
        CHECK(report.satisfied);
    }
    SUBCASE("comparator length mismatch rejected") {
        tracker_config cfg;
        cfg.variant = tracker_variant::ogd;
        cfg.alpha = 0.1;
        cfg.schedule = rate_schedule::constant;
        cfg.eta_base = 0.1;
        quantile_tracker tracker(cfg);
        for (int t = 0; t < 10; ++t) tracker.observe(1.0);
        comparator_sequence bad;
        bad.u.assign(7, 0.0);
        CHECK_THROWS_AS(check_regret_coverage(tracker.run(), bad, 0.1), config_error);
    }
}

TEST_CASE("expected pinball loss quadrature matches closed forms") {
    // uniform: L(q) = (1-a)(1-q)^2/2 + a q^2/2 on [0,1]
    CHECK(expected_quantile_loss(analytic_dist::uniform01, 0.1, 0.8) ==
          doctest::Approx(0.05).epsilon(1e-6));
    CHECK(expected_quantile_loss(analytic_dist::uniform01, 0.1, 0.85) ==
          doctest::Approx(0.04625).epsilon(1e-6));
    CHECK(expected_quantile_loss(analytic_dist::uniform01, 0.1, 0.9) ==
          doctest::Approx(0.045).epsilon(1e-6));
    // normal: L(q) = (1-a)[phi(q) - q(1-Phi(q))] + a[q Phi(q) + phi(q)]
    CHECK(expected_quantile_loss(analytic_dist::normal01, 0.1, 1.5) ==
          doctest::Approx(0.17930679376260464).epsilon(1e-6));
}

TEST_CASE("refinement improvement under the true CDF") {
    SUBCASE("uniform example: q_hat 0.8 refines to 0.85") {
        const refinement_result r =
            check_refinement_improvement(analytic_dist::uniform01, 0.1, 0.5, 0.8);
        CHECK(r.loss_primary == doctest::Approx(0.05).epsilon(1e-6));
        CHECK(r.loss_refined == doctest::Approx(0.04625).epsilon(1e-6));
        CHECK(r.loss_refined < r.loss_primary);
    }
    SUBCASE("normal: q_hat above q* improves") {
        const refinement_result r =
            check_refinement_improvement(analytic_dist::normal01, 0.1, 0.2, 1.5);
        CHECK(r.loss_refined < r.loss_primary);
    }
    SUBCASE("no-op at the true quantile") {
        const double q_star = analytic_quantile(analytic_dist::uniform01, 0.9);
        const refinement_result r =
            check_refinement_improvement(analytic_dist::uniform01, 0.1, 0.5, q_star);
        CHECK(r.loss_refined == doctest::Approx(r.loss_primary).epsilon(1e-12));
    }
    SUBCASE("lambda above 2/L rejected") {
        CHECK_THROWS_AS(check_refinement_improvement(analytic_dist::uniform01, 0.1, 2.5, 0.5),
                        config_error);
    }
}

TEST_CASE("convergence to the analytic quantile") {
    SUBCASE("uniform q* and normal q*") {
        CHECK(analytic_quantile(analytic_dist::uniform01, 0.9) == doctest::Approx(0.9));
        CHECK(analytic_quantile(analytic_dist::normal01, 0.9) ==
              doctest::Approx(1.2815515655446004).epsilon(1e-12));
    }
    SUBCASE("robbins-monro violation rejected") {
        CHECK_THROWS_AS(check_convergence(analytic_dist::uniform01, 0.1, 0.5, 100, 1),
                        config_error);
        CHECK_THROWS_AS(check_convergence(analytic_dist::uniform01, 0.1, 1.2, 100, 1),
                        config_error);
    }
    SUBCASE("short-horizon run lands near q*") {
        const convergence_result r =
            check_convergence(analytic_dist::uniform01, 0.1, 0.6, 50000, 2);
        CHECK(std::fabs(r.gap) < 0.05);
        CHECK(r.q_star == doctest::Approx(0.9));
    }
    SUBCASE("mean gap does not grow when the horizon doubles") {
        double short_sum = 0.0, long_sum = 0.0;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            short_sum += std::fabs(
                check_convergence(analytic_dist::uniform01, 0.1, 0.6, 20000, seed).gap);
            long_sum += std::fabs(
                check_convergence(analytic_dist::uniform01, 0.1, 0.6, 40000, seed).gap);
        }
        CHECK(long_sum <= short_sum + 1e-9);
    }
}

TEST_CASE("random schedules respect the increase budget") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const std::vector<double> rates = random_rate_schedule(3000, seed);
        int increases = 0;
        for (std::size_t t = 1; t < rates.size(); ++t) {
            CHECK(rates[t] > 0.0);
            if (rates[t] > rates[t - 1]) ++increases;
        }
        CHECK(increases <= 10);
    }
}
