#pragma once

#include "cop/score_window.hpp"

#include <vector>

namespace cop {

enum class cdf_kind { ecdf, gaussian_kde, noisy };

/// Fraction of window scores <= x. Throws estimator_unready_error when empty.
double ecdf_eval(const score_window& window, double x);

/**
 * Silverman's rule bandwidth h = 0.9 * sigma * n^{-1/5}, with
 * sigma = min(sample std, IQR / 1.34). Zero-dispersion windows fall back to
 * the floor max(1e-9, 1e-9*|mean|), which keeps the kernel arguments finite
 * while degenerating the KDE to a step function at the common value.
 */
double silverman_bandwidth(const score_window& window);

/// Gaussian-kernel CDF estimate: mean of Phi((x - s_i)/h) over the window.
double kde_cdf_eval(const score_window& window, double bandwidth, double x);

/**
 * Immutable CDF snapshot for one tracker step.
 *
 * Built from the current score window, evaluated any number of times within
 * the step. The noisy variant mixes a base estimate with a uniform draw,
 * gamma*F(x) + (1-gamma)*u; u is sampled once per timestep by the caller so
 * the whole step stays a deterministic function of (state, u).
 */
class cdf_estimate {
public:
    static cdf_estimate ecdf(const score_window& window);
    static cdf_estimate gaussian_kde(const score_window& window);
    static cdf_estimate noisy(cdf_estimate base, double gamma, double noise_u);

    double operator()(double x) const;

    cdf_kind kind() const { return kind_; }
    double bandwidth() const { return bandwidth_; }

private:
    cdf_estimate() = default;

    cdf_kind kind_ = cdf_kind::ecdf;
    cdf_kind base_kind_ = cdf_kind::ecdf; // underlying estimator when noisy
    std::vector<double> samples_;
    double bandwidth_ = 0.0;
    double gamma_ = 1.0;
    double noise_u_ = 0.0;
};

/// gamma*base(x) + (1-gamma)*noise_u with noise_u the step's uniform draw.
double noisy_cdf_eval(const cdf_estimate& base, double gamma, double noise_u, double x);

} // namespace cop
