#pragma once

#include "cop/cdf.hpp"
#include "cop/rng.hpp"
#include "cop/score_window.hpp"

#include <cstdint>
#include <vector>

namespace cop {

enum class tracker_variant { cop, cop_gated, ogd, decay_ogd, sf_ogd, aci };

enum class rate_schedule {
    constant,        // eta_t = eta
    decay,           // eta_t = eta * t^{-1/2-0.1}
    sf,              // eta_t = eta * |grad_t| / sqrt(sum_{i<=t} grad_i^2)
    window_adaptive, // eta_t = eta * (max window - min window)
    explicit_rates   // eta_t supplied by the caller, one value per step
};

struct tracker_config {
    tracker_variant variant = tracker_variant::cop;
    double alpha = 0.05; // one-sided miscoverage target for this tracker
    double eta_base = 1.0;
    rate_schedule schedule = rate_schedule::window_adaptive;
    double scale_factor = 0.5; // lambda_{t+1} = scale_factor * eta_t, in [0,1]
    double epsilon_gate = 0.0; // gated-refinement threshold
    std::size_t window_capacity = 100;
    std::size_t refine_warmup = 10; // refinement disabled below this window fill
    cdf_kind cdf = cdf_kind::ecdf;  // base estimator (ecdf or gaussian_kde)
    double gamma = 1.0;             // < 1 wraps the base estimate in uniform noise
    double init_radius = 0.0;
    std::uint64_t noise_seed = 0;        // seeds the per-step noisy-CDF draws
    std::vector<double> explicit_rate_values; // used when schedule == explicit_rates
};

/**
 * State of one one-sided radius tracker.
 *
 * q_hat is the primary radius driven by the miscoverage gradient; q is the
 * refined radius actually emitted. m is the optimistic term behind the
 * current q (q = q_hat - eta_prev * m), zero until the first refinement.
 */
struct tracker_state {
    tracker_variant variant = tracker_variant::cop;
    double q_hat = 0.0;
    double q = 0.0;
    std::int64_t t = 1;
    double eta_base = 0.0;
    double eta_t = 0.0;
    double lambda = 0.0; // lambda_{t+1} applied by the last refinement
    double scale_factor = 0.0;
    double alpha = 0.0;
    double epsilon_gate = 0.0;
    double m = 0.0;
};

/// ACI keeps a running miscoverage estimate and reads its radius off the
/// empirical quantile of a rolling score window.
struct aci_state {
    double alpha_hat = 0.0;
    double eta = 0.0;
    double target_alpha = 0.0;
    score_window window{100};
};

/// Optimistic hint M_{t+1} plus its analytic bound.
struct optimistic_term {
    double value = 0.0;
    double bound = 0.0;
};

/// |M_t| <= max(alpha, 1-alpha) for the distribution-informed hint.
double optimistic_bound(double alpha);

/// Hint for a given estimated-CDF value at the primary radius.
optimistic_term cop_optimistic_term(double cdf_at_q_hat, double alpha, double scale_factor);

/// Validates the config and returns a fresh state with q = q_hat = init, t = 1.
tracker_state reset(const tracker_config& config);

/// Plain gradient step for the OGD-family variants. Pre: eta_t already set.
tracker_state ogd_step(tracker_state state, double score);

/**
 * One COP step: miscoverage gradient against the refined radius, then the
 * optimistic refinement through the estimated CDF. Pre: eta_t already set.
 * Passing cdf == nullptr skips the refinement (warm-up; identical to
 * scale_factor = 0). The gated variant applies the refinement only when
 * |F(q_hat') - (1-alpha)| >= epsilon_gate.
 */
tracker_state cop_step(tracker_state state, double score, const cdf_estimate* cdf);

/// Radius ACI emits in its current state: +inf when alpha_hat <= 0 or the
/// window is still empty, -inf when alpha_hat >= 1, else the empirical
/// (1-alpha_hat)-quantile of the window.
double aci_radius(const aci_state& state);

/// One ACI step: emit, score against the radius, update alpha_hat, append.
aci_state aci_step(aci_state state, double score);

/**
 * Effective learning rate for step t.
 *
 * grad_abs is |err_t - alpha| and grad_sq_sum the cumulative squared gradient
 * norm from steps before t (both used only by the sf schedule; sf falls back
 * to eta_base on the first step, where the history is empty).
 */
double effective_rate(rate_schedule schedule, double eta_base, std::int64_t t,
                      const score_window& window, double grad_abs, double grad_sq_sum);

/// Everything observed at one step; q/q_hat/m are the values in force when
/// the score arrived (the radius the interval used).
struct step_record {
    std::int64_t t = 0;
    double score = 0.0;
    double eta = 0.0;
    int err = 0;
    double q = 0.0;
    double q_hat = 0.0;
    double m = 0.0;
};

/// Full trajectory of one tracker over a stream; input to the theory checks.
struct tracker_run {
    double alpha = 0.0;
    std::vector<step_record> steps;
    double final_q = 0.0;
    double final_q_hat = 0.0;
    double final_m = 0.0;
};

/**
 * Single-threaded state machine driving one tracker over a score stream:
 * owns the score window, the rate schedule state, per-step CDF snapshots
 * and the trajectory log. Instances are independent; advancing two trackers
 * on different streams concurrently is safe.
 */
class quantile_tracker {
public:
    explicit quantile_tracker(tracker_config config);

    /// Radius the next interval should use.
    double radius() const;

    /// Consume one score and advance; returns what was recorded for the step.
    step_record observe(double score);

    const tracker_run& run() const { return run_; }
    const tracker_config& config() const { return config_; }
    const tracker_state& state() const { return state_; }
    const aci_state& aci() const { return aci_; }

private:
    tracker_config config_;
    tracker_state state_;
    aci_state aci_;
    score_window window_;
    double grad_sq_sum_ = 0.0;
    rng_stream noise_rng_;
    tracker_run run_;
};

} // namespace cop
