#pragma once

#include <cstddef>
#include <vector>

namespace cop {

enum class predictor_kind { ar3, theta };

/// One-sided non-conformity scores for an asymmetric interval around y_hat.
/// The upper tracker consumes `upper` = y - y_hat, the lower tracker
/// `lower` = y_hat - y, each at half the nominal miscoverage.
struct side_scores {
    double lower = 0.0;
    double upper = 0.0;
};

side_scores score_pair(double y, double y_hat);

/**
 * Online one-step-ahead point forecaster.
 *
 * ar3: AR(3) with intercept, refit by OLS over the most recent fit_window
 * observations at every step; a singular design falls back to a ridge solve
 * with penalty 1e-6. Theta: mean of the extrapolated OLS trend line and a
 * lag-corrected SES forecast of the curvature-amplified (theta = 2) series,
 * with the smoothing parameter grid-fit on [0.01, 0.99].
 *
 * Forecasts use only observations already passed to observe(); until enough
 * history exists the forecast is the last observed value (0 when empty).
 */
class forecaster {
public:
    explicit forecaster(predictor_kind kind, std::size_t fit_window = 200);

    double forecast() const;
    void observe(double y);

    std::size_t history_size() const { return history_.size(); }

private:
    double ar_forecast() const;
    double theta_forecast() const;

    predictor_kind kind_;
    std::size_t fit_window_;
    std::vector<double> history_;
};

} // namespace cop
