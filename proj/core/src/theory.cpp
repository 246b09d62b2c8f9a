#include "cop/theory.hpp"

#include "cop/errors.hpp"
#include "cop/normal.hpp"
#include "cop/rng.hpp"
#include "cop/score_window.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cop {

namespace {

constexpr double kTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct shift_frame {
    double shift = 0.0; // L = min(0, min score, q1)
    double b = 0.0;     // B~ = max(max score, q1) - L
};

shift_frame make_shift_frame(const tracker_run& run) {
    if (run.steps.empty()) {
        throw config_error("bound check: empty run");
    }
    double smin = kInf, smax = -kInf;
    for (const auto& s : run.steps) {
        if (!std::isfinite(s.score)) {
            throw stream_error("bound check: non-finite score in run");
        }
        if (!(s.eta >= 0.0)) {
            throw config_error("bound check: negative learning rate");
        }
        smin = std::min(smin, s.score);
        smax = std::max(smax, s.score);
    }
    const double q1 = run.steps.front().q;
    shift_frame f;
    f.shift = std::min({0.0, smin, q1});
    f.b = std::max(smax, q1) - f.shift;
    return f;
}

void finalize(bound_report& report) {
    report.satisfied = true;
    report.slack = kInf;
    bool first = true;
    for (const auto& p : report.prefixes) {
        const double gap = p.rhs - p.lhs;
        if (first || gap < report.slack) {
            report.slack = gap;
            report.lhs = p.lhs;
            report.rhs = p.rhs;
            first = false;
        }
        if (!(p.lhs <= p.rhs + kTol)) {
            report.satisfied = false;
        }
    }
}

} // namespace

double quantile_loss(double alpha, double residual) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw config_error("quantile_loss: alpha must lie in (0,1)");
    }
    return ((residual > 0.0 ? 1.0 : 0.0) - alpha) * residual;
}

bound_report check_coverage_bound(const tracker_run& run) {
    const shift_frame frame = make_shift_frame(run);
    const double m = optimistic_bound(run.alpha);

    bound_report report;
    report.name = "coverage_bound";
    report.prefixes.reserve(run.steps.size());

    double err_sum = 0.0;
    double omega = 0.0;
    double delta_sum = 0.0;
    double prev_inv = 0.0;
    for (std::size_t i = 0; i < run.steps.size(); ++i) {
        const auto& s = run.steps[i];
        err_sum += s.err;
        omega = std::max(omega, s.eta);
        const double inv = 1.0 / s.eta; // +inf for a zero rate
        if (i == 0) {
            delta_sum = inv;
        } else if (std::isinf(inv) && std::isinf(prev_inv)) {
            // consecutive zero rates: equal, no schedule movement
        } else {
            delta_sum += std::fabs(inv - prev_inv);
        }
        prev_inv = inv;

        const double t = static_cast<double>(i + 1);
        prefix_check p;
        p.t = s.t;
        p.lhs = std::fabs(err_sum / t - run.alpha);
        p.rhs = (frame.b + (2.0 + 6.0 * m) * omega) / t * delta_sum;
        report.prefixes.push_back(p);
    }
    finalize(report);
    return report;
}

bound_report check_boundedness(const tracker_run& run) {
    const shift_frame frame = make_shift_frame(run);
    const double m = optimistic_bound(run.alpha);

    bound_report report;
    report.name = "boundedness";
    report.prefixes.reserve(run.steps.size());

    double omega = 0.0;
    for (const auto& s : run.steps) {
        omega = std::max(omega, s.eta);
        // Two-sided bound L - Omega(2M+1) <= q <= B~ + L + Omega(2M+1),
        // folded into |q - center| <= halfwidth.
        const double center = frame.shift + 0.5 * frame.b;
        const double halfwidth = 0.5 * frame.b + omega * (2.0 * m + 1.0);
        prefix_check p;
        p.t = s.t;
        p.lhs = std::fabs(s.q - center);
        p.rhs = halfwidth;
        report.prefixes.push_back(p);
    }
    finalize(report);
    return report;
}

comparator_sequence rolling_quantile_comparator(const tracker_run& run, std::size_t window) {
    comparator_sequence comp;
    comp.u.reserve(run.steps.size());
    score_window past(window);
    for (const auto& s : run.steps) {
        comp.u.push_back(past.empty() ? 0.0 : past.order_statistic(1.0 - run.alpha));
        past.push(s.score);
    }
    return comp;
}

bound_report check_regret_coverage(const tracker_run& run, const comparator_sequence& comparator,
                                   double eta) {
    if (run.steps.empty()) {
        throw config_error("check_regret_coverage: empty run");
    }
    if (comparator.u.size() != run.steps.size()) {
        throw config_error("check_regret_coverage: comparator length mismatch");
    }
    if (!(eta > 0.0)) {
        throw config_error("check_regret_coverage: eta must be positive");
    }
    for (const auto& s : run.steps) {
        if (std::fabs(s.eta - eta) > 1e-12 * std::max(1.0, eta)) {
            throw config_error("check_regret_coverage: run does not use a constant rate");
        }
    }
    if (std::fabs(run.steps.front().q_hat) > 1e-12) {
        throw config_error("check_regret_coverage: run must start at q_hat = 0");
    }

    const double alpha = run.alpha;
    bound_report report;
    report.name = "regret_coverage";
    report.prefixes.reserve(run.steps.size());

    double loss_gap_sum = 0.0;
    double err_sum = 0.0;
    double hint_sq_sum = 0.0;
    double env_sum = 0.0;
    for (std::size_t i = 0; i < run.steps.size(); ++i) {
        const auto& s = run.steps[i];
        const double u_t = comparator.u[i];
        const double u_prev = (i == 0) ? 0.0 : comparator.u[i - 1];

        loss_gap_sum += quantile_loss(alpha, s.score - s.q) - quantile_loss(alpha, s.score - u_t);
        err_sum += s.err;
        const double hint = alpha - static_cast<double>(s.err) - s.m;
        hint_sq_sum += hint * hint;
        const double du_t = u_t - s.q_hat;
        const double du_prev = u_prev - s.q_hat;
        env_sum += (du_t * du_t - du_prev * du_prev) / (2.0 * eta);

        const double t = static_cast<double>(i + 1);
        prefix_check p;
        p.t = s.t;
        p.lhs = loss_gap_sum / t + eta * (1.0 - 2.0 * alpha) / 4.0 * (err_sum / t - alpha);
        p.rhs = eta / t * hint_sq_sum + env_sum / t;
        report.prefixes.push_back(p);
    }
    finalize(report);
    return report;
}

double analytic_cdf(analytic_dist dist, double x) {
    if (dist == analytic_dist::uniform01) {
        return std::clamp(x, 0.0, 1.0);
    }
    return normal_cdf(x);
}

double analytic_quantile(analytic_dist dist, double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw config_error("analytic_quantile: p must lie in (0,1)");
    }
    if (dist == analytic_dist::uniform01) {
        return p;
    }
    return normal_quantile(p);
}

double analytic_density_sup(analytic_dist dist) {
    return dist == analytic_dist::uniform01 ? 1.0 : normal_pdf(0.0);
}

double expected_quantile_loss(analytic_dist dist, double alpha, double q) {
    constexpr int kPoints = 100000;
    double acc = 0.0;
    if (dist == analytic_dist::uniform01) {
        const double dx = 1.0 / kPoints;
        for (int i = 0; i < kPoints; ++i) {
            const double s = (i + 0.5) * dx;
            acc += quantile_loss(alpha, s - q);
        }
        return acc * dx;
    }
    const double lo = -10.0, hi = 10.0;
    const double dx = (hi - lo) / kPoints;
    for (int i = 0; i < kPoints; ++i) {
        const double s = lo + (i + 0.5) * dx;
        acc += quantile_loss(alpha, s - q) * normal_pdf(s);
    }
    return acc * dx;
}

convergence_result check_convergence(analytic_dist dist, double alpha, double rate_exponent,
                                     std::int64_t horizon, std::uint64_t seed) {
    if (!(rate_exponent > 0.5 && rate_exponent <= 1.0)) {
        throw config_error("check_convergence: rate exponent violates the Robbins-Monro "
                           "condition (need 0.5 < p <= 1)");
    }
    if (horizon < 1) {
        throw config_error("check_convergence: horizon must be positive");
    }

    tracker_config cfg;
    cfg.variant = tracker_variant::cop;
    cfg.alpha = alpha;
    cfg.schedule = rate_schedule::explicit_rates;
    cfg.explicit_rate_values.resize(static_cast<std::size_t>(horizon));
    for (std::int64_t t = 1; t <= horizon; ++t) {
        cfg.explicit_rate_values[static_cast<std::size_t>(t - 1)] =
            std::pow(static_cast<double>(t), -rate_exponent);
    }
    quantile_tracker tracker(cfg);

    rng_stream draws(substream_seed(seed, 11));
    for (std::int64_t t = 0; t < horizon; ++t) {
        const double s =
            dist == analytic_dist::uniform01 ? draws.uniform01() : draws.normal();
        tracker.observe(s);
    }

    convergence_result result;
    result.q_final = tracker.run().final_q;
    result.q_star = analytic_quantile(dist, 1.0 - alpha);
    result.gap = result.q_final - result.q_star;
    return result;
}

refinement_result check_refinement_improvement(analytic_dist dist, double alpha, double lambda,
                                               double q_hat) {
    if (!(lambda > 0.0 && lambda < 2.0 / analytic_density_sup(dist))) {
        throw config_error("check_refinement_improvement: lambda must lie in (0, 2/L)");
    }
    const double dev = analytic_cdf(dist, q_hat) - (1.0 - alpha);
    const double q_refined = q_hat - lambda * dev;
    refinement_result r;
    r.loss_primary = expected_quantile_loss(dist, alpha, q_hat);
    r.loss_refined = expected_quantile_loss(dist, alpha, q_refined);
    return r;
}

std::vector<double> random_rate_schedule(std::int64_t length, std::uint64_t seed,
                                         int max_increases) {
    rng_stream rng(substream_seed(seed, 3));
    std::vector<double> rates;
    rates.reserve(static_cast<std::size_t>(length));

    double eta = 0.05 + 0.95 * rng.uniform01();
    int increases_left = static_cast<int>(rng.uniform01() * (max_increases + 1));
    std::int64_t segment_end = 0;
    for (std::int64_t t = 0; t < length; ++t) {
        if (t >= segment_end) {
            if (t > 0) {
                if (increases_left > 0 && rng.uniform01() < 0.35) {
                    eta *= 1.5 + 2.5 * rng.uniform01();
                    --increases_left;
                } else {
                    eta *= 0.4 + 0.55 * rng.uniform01();
                }
            }
            segment_end = t + 50 + static_cast<std::int64_t>(rng.uniform01() * 250.0);
        }
        rates.push_back(eta);
    }
    return rates;
}

tracker_run adversarial_cop_run(const certification_run_options& options) {
    rng_stream rng(substream_seed(options.seed, 4));
    const double b = 1.0 + 9.0 * rng.uniform01();
    const int kind = static_cast<int>(rng.next_u64() % 4);

    tracker_config cfg;
    cfg.variant = tracker_variant::cop;
    cfg.alpha = 0.05 + 0.4 * rng.uniform01();
    cfg.scale_factor = 0.5;
    cfg.init_radius = b * rng.uniform01();
    if (options.schedule == rate_schedule::constant) {
        cfg.schedule = rate_schedule::constant;
        cfg.eta_base = options.eta_constant > 0.0 ? options.eta_constant
                                                  : 0.02 + 0.98 * rng.uniform01();
        cfg.init_radius = 0.0; // regret checks need q_hat_1 = 0
    } else {
        cfg.schedule = rate_schedule::explicit_rates;
        cfg.explicit_rate_values = random_rate_schedule(options.length, options.seed);
    }
    quantile_tracker tracker(cfg);

    double level = b * rng.uniform01();
    std::int64_t level_end = 0;
    for (std::int64_t t = 0; t < options.length; ++t) {
        double s = 0.0;
        switch (kind) {
        case 0: // iid uniform in [0, b]
            s = b * rng.uniform01();
            break;
        case 1: // maximal upward pressure whenever the radius is beatable
            s = tracker.radius() < b ? b : 0.0;
            break;
        case 2: // piecewise-constant levels
            if (t >= level_end) {
                level = b * rng.uniform01();
                level_end = t + 100 + static_cast<std::int64_t>(rng.uniform01() * 300.0);
            }
            s = level;
            break;
        default: // hug the radius, flipping err as often as possible
            s = std::clamp(tracker.radius() + (rng.uniform01() - 0.5) * 0.2 * b, 0.0, b);
            break;
        }
        tracker.observe(s);
    }
    return tracker.run();
}

tracker_run worst_case_run(bool all_miss, std::int64_t length, double b) {
    tracker_config cfg;
    cfg.variant = tracker_variant::cop;
    cfg.alpha = 0.05;
    cfg.scale_factor = 0.5;
    cfg.schedule = rate_schedule::constant;
    cfg.eta_base = 0.5;
    cfg.init_radius = all_miss ? 0.0 : b;
    quantile_tracker tracker(cfg);
    for (std::int64_t t = 0; t < length; ++t) {
        tracker.observe(all_miss ? b : 0.0);
    }
    return tracker.run();
}

} // namespace cop
