#include "cop/metrics.hpp"

#include "cop/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cop {

run_summary summarize(std::span<const interval_record> records) {
    if (records.empty()) {
        throw config_error("summarize: empty run");
    }
    const double n = static_cast<double>(records.size());

    std::size_t covered = 0;
    double width_sum = 0.0;
    bool any_infinite = false;
    std::vector<double> widths;
    widths.reserve(records.size());
    for (const auto& r : records) {
        if (r.covered) ++covered;
        widths.push_back(r.width);
        if (std::isinf(r.width)) {
            any_infinite = true;
        } else {
            width_sum += r.width;
        }
    }
    std::sort(widths.begin(), widths.end()); // +inf sentinels land last

    run_summary s;
    s.coverage = static_cast<double>(covered) / n;
    s.avg_width = any_infinite ? std::numeric_limits<double>::infinity() : width_sum / n;
    s.median_width = widths[(widths.size() - 1) / 2]; // lower median
    return s;
}

std::vector<double> rolling_coverage(std::span<const interval_record> records,
                                     std::size_t window) {
    if (window == 0 || window > records.size()) {
        throw config_error("rolling_coverage: window must lie in [1, run length]");
    }
    std::vector<double> out;
    out.reserve(records.size() - window + 1);
    std::size_t covered = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (records[i].covered) ++covered;
        if (i + 1 >= window) {
            out.push_back(static_cast<double>(covered) / static_cast<double>(window));
            if (records[i + 1 - window].covered) --covered;
        }
    }
    return out;
}

std::optional<std::int64_t> recovery_time(std::span<const interval_record> records,
                                          std::int64_t changepoint, std::int64_t w_r,
                                          std::int64_t k, double alpha) {
    const auto n = static_cast<std::int64_t>(records.size());
    if (w_r < 1 || k < 1) {
        throw config_error("recovery_time: window and consecutive count must be positive");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw config_error("recovery_time: alpha must lie in (0,1)");
    }
    if (changepoint < 0 || changepoint + w_r + k > n) {
        throw config_error("recovery_time: changepoint + w_r + k must fit in the run");
    }

    const double lo = 1.0 - alpha - 1.0 / static_cast<double>(w_r);
    const double hi = 1.0 - alpha + 1.0 / static_cast<double>(w_r);
    const std::vector<double> cvg = rolling_coverage(records, static_cast<std::size_t>(w_r));
    // cvg[i] is the coverage ending at t = w_r + i (1-based t).
    auto in_band = [&](std::int64_t t) {
        const double c = cvg[static_cast<std::size_t>(t - w_r)];
        return c >= lo && c <= hi;
    };

    for (std::int64_t t_r = std::max(changepoint + 1, w_r); t_r + k - 1 <= n; ++t_r) {
        bool ok = true;
        for (std::int64_t j = 0; j < k; ++j) {
            if (!in_band(t_r + j)) {
                ok = false;
                break;
            }
        }
        if (ok) return t_r - changepoint;
    }
    return std::nullopt;
}

} // namespace cop
