#pragma once

#include "cop/theory.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cop {

/// Aggregate outcome of one family of bound checks.
struct bound_certification {
    std::string name;
    std::vector<bound_report> reports;
    std::vector<std::string> labels;
    int violations = 0;
    double worst_slack = 0.0;
    bool all_satisfied() const { return violations == 0; }
};

/// Coverage bound (constant and arbitrary-rate forms) over `streams` seeded
/// adversarial runs with randomized schedules (at most 10 rate increases).
bound_certification certify_coverage_bounds(int streams, std::int64_t length,
                                            std::uint64_t seed);

/// Radius boundedness over the same stream family, optionally plus the two
/// constructed worst cases (all-miss and all-cover).
bound_certification certify_boundedness(int streams, std::int64_t length, std::uint64_t seed,
                                        bool include_worst_cases);

/// Joint regret-coverage bound over `runs` constant-rate adversarial runs,
/// three comparators each (zero, rolling quantile, random piecewise levels).
bound_certification certify_regret_coverage(int runs, std::int64_t length, std::uint64_t seed);

struct convergence_certification {
    analytic_dist dist = analytic_dist::uniform01;
    double tolerance = 0.0;
    int seeds = 0;
    int within_tolerance = 0;
    double worst_gap = 0.0;
    std::vector<convergence_result> results;
};

/// Robbins-Monro convergence: |q_final - q*| against `tolerance`, seeds
/// seed0+1 ... seed0+seeds.
convergence_certification certify_convergence(analytic_dist dist, double alpha,
                                              double rate_exponent, std::int64_t horizon,
                                              int seeds, double tolerance, std::uint64_t seed0);

struct refinement_certification {
    analytic_dist dist = analytic_dist::uniform01;
    int grid_points = 0;
    bool improved_everywhere = false; // strict improvement off q*
    bool equal_at_q_star = false;
    double worst_margin = 0.0; // min of loss_primary - loss_refined off q*
};

/// Expected-loss improvement of the true-F refinement on a symmetric grid of
/// primary radii around q* (offset_step spacing, grid_points/2 per side).
refinement_certification certify_refinement(analytic_dist dist, double alpha, double lambda,
                                            int grid_points, double offset_step);

} // namespace cop
