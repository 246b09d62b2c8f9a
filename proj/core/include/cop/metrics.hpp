#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace cop {

/// One timestep of an experiment: interval, truth, scores, coverage flag.
struct interval_record {
    std::int64_t t = 0;
    double y = 0.0;
    double y_hat = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    double width = 0.0; // max(0, q_l + q_u); +inf when a radius is infinite
    bool covered = false;
    double score_lower = 0.0;
    double score_upper = 0.0;
};

struct run_summary {
    double coverage = 0.0;
    double avg_width = 0.0;    // +inf as soon as any width is infinite
    double median_width = 0.0; // lower median; infinite widths sort last
};

run_summary summarize(std::span<const interval_record> records);

/// Sliding mean of the coverage flag; entry i corresponds to t = window + i.
std::vector<double> rolling_coverage(std::span<const interval_record> records,
                                     std::size_t window);

/**
 * Steps after `changepoint` until the sliding coverage re-enters
 * [1-alpha-1/w_r, 1-alpha+1/w_r] (endpoints inclusive) and stays there for
 * k consecutive indices. Returns nullopt when coverage never stabilizes.
 */
std::optional<std::int64_t> recovery_time(std::span<const interval_record> records,
                                          std::int64_t changepoint, std::int64_t w_r,
                                          std::int64_t k, double alpha);

} // namespace cop
