#pragma once

#include "cop/tracker.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cop {

/// (1-alpha)-quantile (pinball) loss of a residual: (1{r > 0} - alpha) * r.
double quantile_loss(double alpha, double residual);

struct prefix_check {
    std::int64_t t = 0;
    double lhs = 0.0;
    double rhs = 0.0;
};

/// Outcome of one numerical bound certification. lhs/rhs hold the worst
/// prefix; satisfied means lhs <= rhs + 1e-9 at every prefix.
struct bound_report {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool satisfied = false;
    double slack = 0.0; // min over prefixes of rhs - lhs
    std::vector<prefix_check> prefixes;
};

/**
 * Certifies the finite-sample coverage bound at every prefix T:
 *   |mean err - alpha| <= (B + (2+6M) Omega_T) / T * ||Delta_{1:T}||_1,
 * with Delta_1 = 1/eta_1, Delta_t = |1/eta_t - 1/eta_{t-1}|,
 * Omega_T = max rate, M = max(alpha, 1-alpha). Constant-rate runs reduce to
 * (B + (2+6M) eta)/(T eta).
 *
 * Runs whose scores or initial radius leave [0, B] are handled by the exact
 * shift reduction s~ = s - L, L = min(0, min s, q1), B~ = max(max s, q1) - L,
 * which preserves the err sequence and restores the theorem's hypotheses.
 */
bound_report check_coverage_bound(const tracker_run& run);

/// Certifies -Omega_t (2M+1) <= q_t <= B + Omega_t (2M+1) at every step,
/// under the same shift reduction as check_coverage_bound.
bound_report check_boundedness(const tracker_run& run);

/// Arbitrary comparator trajectory; u[i] is u_{i+1} and u_0 = 0 by convention.
struct comparator_sequence {
    std::vector<double> u;
};

/// Default comparator: rolling empirical (1-alpha)-quantile of past scores.
comparator_sequence rolling_quantile_comparator(const tracker_run& run,
                                                std::size_t window = 100);

/**
 * Certifies the joint regret-coverage bound for a constant-rate run at every
 * prefix T:
 *   (1/T) sum [l_t(q_t) - l_t(u_t)] + (eta(1-2alpha)/4)(mean err - alpha)
 *     <= (eta/T) sum (alpha - err_t - M_t)^2
 *        + (1/T) sum (1/2eta)(|u_t - q_hat_t|^2 - |u_{t-1} - q_hat_t|^2).
 * The environments sum carries the 1/T the proof's division by T produces,
 * and the index-shifted form requires q_hat_1 = 0 (validated).
 */
bound_report check_regret_coverage(const tracker_run& run, const comparator_sequence& comparator,
                                   double eta);

enum class analytic_dist { uniform01, normal01 };

double analytic_cdf(analytic_dist dist, double x);
double analytic_quantile(analytic_dist dist, double p);
double analytic_density_sup(analytic_dist dist);

/// Expected pinball loss E l_{1-alpha}(s - q) under the analytic
/// distribution, by midpoint quadrature on a 1e5-point grid.
double expected_quantile_loss(analytic_dist dist, double alpha, double q);

struct convergence_result {
    double q_final = 0.0;
    double q_star = 0.0;
    double gap = 0.0;
};

/**
 * Runs COP (ECDF window, scale 0.5) on iid scores with the Robbins-Monro
 * schedule eta_t = t^{-rate_exponent} and compares the final refined radius
 * with the analytic (1-alpha)-quantile. rate_exponent must lie in (0.5, 1].
 */
convergence_result check_convergence(analytic_dist dist, double alpha, double rate_exponent,
                                     std::int64_t horizon, std::uint64_t seed);

struct refinement_result {
    double loss_refined = 0.0;
    double loss_primary = 0.0;
};

/// Refines q_hat once through the *true* CDF (the proposition's hypotheses)
/// and reports both expected losses. Requires 0 < lambda < 2 / sup density.
refinement_result check_refinement_improvement(analytic_dist dist, double alpha, double lambda,
                                               double q_hat);

// ---------------------------------------------------------------------------
// Seeded stream/schedule makers for the certification suite.
// ---------------------------------------------------------------------------

struct certification_run_options {
    std::int64_t length = 2000;
    std::uint64_t seed = 1;
    rate_schedule schedule = rate_schedule::explicit_rates; // random if explicit
    double eta_constant = 0.0; // used when schedule == constant (0 = draw one)
};

/// Random positive piecewise-constant schedule with at most `max_increases`
/// upward moves.
std::vector<double> random_rate_schedule(std::int64_t length, std::uint64_t seed,
                                         int max_increases = 10);

/// Runs COP on a randomized adversarial stream with scores in [0, B] (B drawn
/// from the seed; the adversary may react to the current radius).
tracker_run adversarial_cop_run(const certification_run_options& options);

/// Constructed worst-case streams: all-miss pins scores at B, all-cover at 0.
tracker_run worst_case_run(bool all_miss, std::int64_t length, double b);

} // namespace cop
