#include "cop/certification.hpp"

#include "cop/errors.hpp"
#include "cop/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void absorb(bound_certification& cert, bound_report report, std::string label) {
    if (!report.satisfied) ++cert.violations;
    cert.worst_slack = std::min(cert.worst_slack, report.slack);
    report.prefixes.clear(); // keep the aggregate light; worst pair is retained
    cert.reports.push_back(std::move(report));
    cert.labels.push_back(std::move(label));
}

} // namespace

bound_certification certify_coverage_bounds(int streams, std::int64_t length,
                                            std::uint64_t seed) {
    bound_certification cert;
    cert.name = "coverage_bound";
    cert.worst_slack = kInf;
    for (int i = 0; i < streams; ++i) {
        certification_run_options opt;
        opt.length = length;
        opt.seed = seed + static_cast<std::uint64_t>(i);
        const tracker_run run = adversarial_cop_run(opt);
        absorb(cert, check_coverage_bound(run), "stream_" + std::to_string(i));
    }
    return cert;
}

bound_certification certify_boundedness(int streams, std::int64_t length, std::uint64_t seed,
                                        bool include_worst_cases) {
    bound_certification cert;
    cert.name = "boundedness";
    cert.worst_slack = kInf;
    for (int i = 0; i < streams; ++i) {
        certification_run_options opt;
        opt.length = length;
        opt.seed = seed + static_cast<std::uint64_t>(i);
        const tracker_run run = adversarial_cop_run(opt);
        absorb(cert, check_boundedness(run), "stream_" + std::to_string(i));
    }
    if (include_worst_cases) {
        absorb(cert, check_boundedness(worst_case_run(true, length, 5.0)), "all_miss");
        absorb(cert, check_boundedness(worst_case_run(false, length, 5.0)), "all_cover");
    }
    return cert;
}

bound_certification certify_regret_coverage(int runs, std::int64_t length, std::uint64_t seed) {
    bound_certification cert;
    cert.name = "regret_coverage";
    cert.worst_slack = kInf;
    for (int i = 0; i < runs; ++i) {
        certification_run_options opt;
        opt.length = length;
        opt.seed = seed + static_cast<std::uint64_t>(i);
        opt.schedule = rate_schedule::constant;
        const tracker_run run = adversarial_cop_run(opt);
        const double eta = run.steps.front().eta;
        const std::string tag = "run_" + std::to_string(i);

        comparator_sequence zero;
        zero.u.assign(run.steps.size(), 0.0);
        absorb(cert, check_regret_coverage(run, zero, eta), tag + "_zero");

        absorb(cert, check_regret_coverage(run, rolling_quantile_comparator(run), eta),
               tag + "_rollq");

        comparator_sequence piecewise;
        piecewise.u.reserve(run.steps.size());
        rng_stream rng(substream_seed(opt.seed, 6));
        double b = 0.0;
        for (const auto& s : run.steps) b = std::max(b, s.score);
        double level = b * rng.uniform01();
        std::int64_t until = 0;
        for (std::size_t t = 0; t < run.steps.size(); ++t) {
            if (static_cast<std::int64_t>(t) >= until) {
                level = b * rng.uniform01();
                until = static_cast<std::int64_t>(t) + 100 +
                        static_cast<std::int64_t>(rng.uniform01() * 400.0);
            }
            piecewise.u.push_back(level);
        }
        absorb(cert, check_regret_coverage(run, piecewise, eta), tag + "_piecewise");
    }
    return cert;
}

convergence_certification certify_convergence(analytic_dist dist, double alpha,
                                              double rate_exponent, std::int64_t horizon,
                                              int seeds, double tolerance, std::uint64_t seed0) {
    convergence_certification cert;
    cert.dist = dist;
    cert.tolerance = tolerance;
    cert.seeds = seeds;
    cert.worst_gap = 0.0;
    for (int i = 1; i <= seeds; ++i) {
        const convergence_result r =
            check_convergence(dist, alpha, rate_exponent, horizon, seed0 + static_cast<std::uint64_t>(i));
        if (std::fabs(r.gap) < tolerance) ++cert.within_tolerance;
        cert.worst_gap = std::max(cert.worst_gap, std::fabs(r.gap));
        cert.results.push_back(r);
    }
    return cert;
}

refinement_certification certify_refinement(analytic_dist dist, double alpha, double lambda,
                                            int grid_points, double offset_step) {
    if (grid_points < 2 || grid_points % 2 != 0) {
        throw config_error("certify_refinement: grid_points must be even and >= 2");
    }
    refinement_certification cert;
    cert.dist = dist;
    cert.grid_points = grid_points;
    cert.worst_margin = kInf;

    const double q_star = analytic_quantile(dist, 1.0 - alpha);
    cert.improved_everywhere = true;
    for (int k = 1; k <= grid_points / 2; ++k) {
        for (const double sign : {-1.0, 1.0}) {
            const double q_hat = q_star + sign * offset_step * k;
            const refinement_result r = check_refinement_improvement(dist, alpha, lambda, q_hat);
            const double margin = r.loss_primary - r.loss_refined;
            cert.worst_margin = std::min(cert.worst_margin, margin);
            if (!(margin > 1e-9)) cert.improved_everywhere = false;
        }
    }

    const refinement_result at_star = check_refinement_improvement(dist, alpha, lambda, q_star);
    cert.equal_at_q_star = std::fabs(at_star.loss_refined - at_star.loss_primary) <= 1e-12;
    return cert;
}

} // namespace cop
