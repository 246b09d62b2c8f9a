#include "cop/tracker.hpp"

#include "cop/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

namespace cop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_finite_score(double score) {
    if (!std::isfinite(score)) {
        throw stream_error("non-finite score in stream");
    }
}

bool is_ogd_family(tracker_variant v) {
    return v == tracker_variant::ogd || v == tracker_variant::decay_ogd ||
           v == tracker_variant::sf_ogd;
}

} // namespace

double optimistic_bound(double alpha) {
    return std::max(alpha, 1.0 - alpha);
}

optimistic_term cop_optimistic_term(double cdf_at_q_hat, double alpha, double scale_factor) {
    optimistic_term term;
    term.value = (cdf_at_q_hat - (1.0 - alpha)) * scale_factor;
    term.bound = optimistic_bound(alpha) * scale_factor;
    return term;
}

tracker_state reset(const tracker_config& config) {
    if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
        throw config_error("tracker: alpha must lie in (0,1)");
    }
    if (!(config.eta_base >= 0.0) || !std::isfinite(config.eta_base)) {
        throw config_error("tracker: eta_base must be finite and nonnegative");
    }
    if (!(config.scale_factor >= 0.0 && config.scale_factor <= 1.0)) {
        throw config_error("tracker: scale_factor must lie in [0,1]");
    }
    if (!(config.epsilon_gate >= 0.0)) {
        throw config_error("tracker: epsilon_gate must be nonnegative");
    }
    if (config.window_capacity == 0) {
        throw config_error("tracker: window capacity must be positive");
    }
    if (!std::isfinite(config.init_radius)) {
        throw config_error("tracker: initial radius must be finite");
    }
    if (config.schedule == rate_schedule::explicit_rates) {
        if (config.explicit_rate_values.empty()) {
            throw config_error("tracker: explicit schedule needs at least one rate");
        }
        for (double r : config.explicit_rate_values) {
            if (!(r >= 0.0) || !std::isfinite(r)) {
                throw config_error("tracker: explicit rates must be finite and nonnegative");
            }
        }
    }

    tracker_state s;
    s.variant = config.variant;
    s.q_hat = config.init_radius;
    s.q = config.init_radius;
    s.t = 1;
    s.eta_base = config.eta_base;
    s.eta_t = 0.0;
    s.lambda = 0.0;
    s.scale_factor = config.scale_factor;
    s.alpha = config.alpha;
    s.epsilon_gate = config.epsilon_gate;
    s.m = 0.0;
    return s;
}

tracker_state ogd_step(tracker_state state, double score) {
    if (!is_ogd_family(state.variant)) {
        throw config_error("ogd_step: variant is not in the OGD family");
    }
    require_finite_score(score);

    const double err = (score > state.q) ? 1.0 : 0.0;
    state.q_hat += state.eta_t * (err - state.alpha);
    state.q = state.q_hat;
    state.m = 0.0;
    state.lambda = 0.0;
    ++state.t;
    return state;
}

tracker_state cop_step(tracker_state state, double score, const cdf_estimate* cdf) {
    if (state.variant != tracker_variant::cop && state.variant != tracker_variant::cop_gated) {
        throw config_error("cop_step: variant must be cop or cop_gated");
    }
    require_finite_score(score);

    // Miscoverage is judged against the refined radius that was emitted.
    const double err = (score > state.q) ? 1.0 : 0.0;
    const double q_hat_next = state.q_hat + state.eta_t * (err - state.alpha);

    double q_next = q_hat_next;
    double m_next = 0.0;
    double lambda = 0.0;
    if (cdf != nullptr) {
        const double f = (*cdf)(q_hat_next);
        if (!(f >= 0.0 && f <= 1.0)) {
            throw estimator_contract_error("cop_step: CDF value " + std::to_string(f) +
                                           " outside [0,1]");
        }
        const double dev = f - (1.0 - state.alpha);
        const bool apply = (state.variant == tracker_variant::cop) ||
                           (std::fabs(dev) >= state.epsilon_gate);
        lambda = state.scale_factor * state.eta_t;
        if (apply) {
            q_next = q_hat_next - lambda * dev;
            m_next = state.scale_factor * dev;
        }
    }

    state.q_hat = q_hat_next;
    state.q = q_next;
    state.m = m_next;
    state.lambda = lambda;
    ++state.t;
    return state;
}

double aci_radius(const aci_state& state) {
    if (state.alpha_hat <= 0.0) return kInf;  // whole-line one-sided set
    if (state.alpha_hat >= 1.0) return -kInf; // empty side
    if (state.window.empty()) return kInf;    // no scores to take a quantile of yet
    return state.window.order_statistic(1.0 - state.alpha_hat);
}

aci_state aci_step(aci_state state, double score) {
    require_finite_score(score);
    const double radius = aci_radius(state);
    const double err = (score > radius) ? 1.0 : 0.0;
    state.alpha_hat += state.eta * (state.target_alpha - err);
    state.window.push(score);
    return state;
}

double effective_rate(rate_schedule schedule, double eta_base, std::int64_t t,
                      const score_window& window, double grad_abs, double grad_sq_sum) {
    if (t < 1) {
        throw config_error("effective_rate: t must be >= 1");
    }
    switch (schedule) {
    case rate_schedule::constant:
        return eta_base;
    case rate_schedule::decay:
        return eta_base * std::pow(static_cast<double>(t), -0.6);
    case rate_schedule::window_adaptive:
        return eta_base * window.range();
    case rate_schedule::sf: {
        if (grad_sq_sum <= 0.0) {
            return eta_base; // first step: no gradient history yet
        }
        return eta_base * grad_abs / std::sqrt(grad_sq_sum + grad_abs * grad_abs);
    }
    case rate_schedule::explicit_rates:
        throw config_error("effective_rate: explicit schedule is indexed by the driver");
    }
    throw config_error("effective_rate: unknown schedule");
}

quantile_tracker::quantile_tracker(tracker_config config)
    : config_(std::move(config)),
      window_(config_.window_capacity),
      noise_rng_(config_.noise_seed) {
    if (config_.variant == tracker_variant::aci) {
        if (!(config_.alpha > 0.0 && config_.alpha < 1.0)) {
            throw config_error("tracker: alpha must lie in (0,1)");
        }
        aci_.alpha_hat = config_.alpha;
        aci_.eta = config_.eta_base;
        aci_.target_alpha = config_.alpha;
        aci_.window = score_window(config_.window_capacity);
    } else {
        state_ = reset(config_);
    }
    run_.alpha = config_.alpha;
}

double quantile_tracker::radius() const {
    if (config_.variant == tracker_variant::aci) {
        return aci_radius(aci_);
    }
    return state_.q;
}

step_record quantile_tracker::observe(double score) {
    require_finite_score(score);

    step_record rec;
    if (config_.variant == tracker_variant::aci) {
        const double r = aci_radius(aci_);
        rec.t = static_cast<std::int64_t>(run_.steps.size()) + 1;
        rec.score = score;
        rec.eta = aci_.eta;
        rec.err = (score > r) ? 1 : 0;
        rec.q = r;
        rec.q_hat = r;
        rec.m = 0.0;
        aci_ = aci_step(std::move(aci_), score);
        run_.steps.push_back(rec);
        run_.final_q = aci_radius(aci_);
        run_.final_q_hat = run_.final_q;
        run_.final_m = 0.0;
        return rec;
    }

    rec.t = state_.t;
    rec.score = score;
    rec.err = (score > state_.q) ? 1 : 0;
    rec.q = state_.q;
    rec.q_hat = state_.q_hat;
    rec.m = state_.m;

    window_.push(score);

    double eta = 0.0;
    if (config_.schedule == rate_schedule::explicit_rates) {
        const auto idx = static_cast<std::size_t>(state_.t - 1);
        if (idx >= config_.explicit_rate_values.size()) {
            throw config_error("tracker: explicit rate schedule exhausted");
        }
        eta = config_.explicit_rate_values[idx];
    } else {
        const double grad_abs = std::fabs(static_cast<double>(rec.err) - config_.alpha);
        eta = effective_rate(config_.schedule, config_.eta_base, state_.t, window_, grad_abs,
                             grad_sq_sum_);
        if (config_.schedule == rate_schedule::sf) {
            grad_sq_sum_ += grad_abs * grad_abs;
        }
    }
    state_.eta_t = eta;
    rec.eta = eta;

    if (config_.variant == tracker_variant::cop || config_.variant == tracker_variant::cop_gated) {
        std::optional<cdf_estimate> estimate;
        if (window_.size() >= config_.refine_warmup) {
            estimate = (config_.cdf == cdf_kind::gaussian_kde)
                           ? cdf_estimate::gaussian_kde(window_)
                           : cdf_estimate::ecdf(window_);
            if (config_.gamma < 1.0) {
                estimate = cdf_estimate::noisy(std::move(*estimate), config_.gamma,
                                               noise_rng_.uniform01());
            }
        }
        state_ = cop_step(std::move(state_), score, estimate ? &*estimate : nullptr);
    } else {
        state_ = ogd_step(std::move(state_), score);
    }

    run_.steps.push_back(rec);
    run_.final_q = state_.q;
    run_.final_q_hat = state_.q_hat;
    run_.final_m = state_.m;
    return rec;
}

} // namespace cop
