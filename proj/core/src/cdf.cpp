#include "cop/cdf.hpp"

#include "cop/errors.hpp"
#include "cop/normal.hpp"

#include <algorithm>
#include <cmath>

namespace cop {

double ecdf_eval(const score_window& window, double x) {
    if (window.empty()) {
        throw estimator_unready_error("ecdf_eval: empty window");
    }
    std::size_t count = 0;
    for (std::size_t i = 0; i < window.size(); ++i) {
        if (window[i] <= x) ++count;
    }
    return static_cast<double>(count) / static_cast<double>(window.size());
}

double silverman_bandwidth(const score_window& window) {
    if (window.size() < 2) {
        throw estimator_unready_error("silverman_bandwidth: need at least 2 scores");
    }
    const double sigma = std::min(window.sample_std(), window.iqr() / 1.34);
    const double n = static_cast<double>(window.size());
    double h = 0.9 * sigma * std::pow(n, -0.2);
    if (h <= 0.0) {
        h = std::max(1e-9, 1e-9 * std::fabs(window.mean()));
    }
    return h;
}

double kde_cdf_eval(const score_window& window, double bandwidth, double x) {
    if (window.empty()) {
        throw estimator_unready_error("kde_cdf_eval: empty window");
    }
    if (!(bandwidth > 0.0)) {
        throw config_error("kde_cdf_eval: bandwidth must be positive");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < window.size(); ++i) {
        acc += normal_cdf((x - window[i]) / bandwidth);
    }
    return acc / static_cast<double>(window.size());
}

cdf_estimate cdf_estimate::ecdf(const score_window& window) {
    if (window.empty()) {
        throw estimator_unready_error("cdf_estimate: empty window");
    }
    cdf_estimate e;
    e.kind_ = cdf_kind::ecdf;
    e.base_kind_ = cdf_kind::ecdf;
    e.samples_ = window.values();
    return e;
}

cdf_estimate cdf_estimate::gaussian_kde(const score_window& window) {
    cdf_estimate e;
    e.kind_ = cdf_kind::gaussian_kde;
    e.base_kind_ = cdf_kind::gaussian_kde;
    e.bandwidth_ = silverman_bandwidth(window);
    e.samples_ = window.values();
    return e;
}

cdf_estimate cdf_estimate::noisy(cdf_estimate base, double gamma, double noise_u) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw config_error("cdf_estimate: gamma must lie in [0,1]");
    }
    if (base.kind_ == cdf_kind::noisy) {
        throw config_error("cdf_estimate: cannot stack noisy estimates");
    }
    base.base_kind_ = base.kind_;
    base.kind_ = cdf_kind::noisy;
    base.gamma_ = gamma;
    base.noise_u_ = noise_u;
    return base;
}

double cdf_estimate::operator()(double x) const {
    double base = 0.0;
    if (base_kind_ == cdf_kind::ecdf) {
        std::size_t count = 0;
        for (double s : samples_) {
            if (s <= x) ++count;
        }
        base = static_cast<double>(count) / static_cast<double>(samples_.size());
    } else {
        double acc = 0.0;
        for (double s : samples_) {
            acc += normal_cdf((x - s) / bandwidth_);
        }
        base = acc / static_cast<double>(samples_.size());
    }
    if (kind_ != cdf_kind::noisy) {
        return base;
    }
    return gamma_ * base + (1.0 - gamma_) * noise_u_;
}

double noisy_cdf_eval(const cdf_estimate& base, double gamma, double noise_u, double x) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw config_error("noisy_cdf_eval: gamma must lie in [0,1]");
    }
    return gamma * base(x) + (1.0 - gamma) * noise_u;
}

} // namespace cop
