#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace cop {

enum class synth_setting { changepoint, drift, var_changepoint, heavy_tail, extreme_drift };

struct synth_config {
    synth_setting setting = synth_setting::changepoint;
    std::size_t n = 2000;
    std::uint64_t seed = 0;
};

struct synth_point {
    std::array<double, 4> x{};
    double y = 0.0;
};

/// Coefficient vector in force at (1-based) step t for a setting of length n.
std::array<double, 4> synth_beta(synth_setting setting, std::size_t t, std::size_t n);

/// Noise standard deviation at step t for the variance-changepoint setting.
double var_changepoint_sigma(std::size_t t);

/// E|X^T beta|^3 for X ~ N(0, I): ||beta||^3 * 2 * sqrt(2/pi). Normalizes the
/// heavy-tail scale multiplier.
double heavy_tail_expected_abs_cubed(const std::array<double, 4>& beta);

/**
 * Generates Y_t = X_t^T beta_t + eps_t with X_t ~ N(0, I_4).
 *
 * Same (setting, n, seed) gives a bit-identical stream: the covariates and
 * the noise come from two independent mt19937_64 substreams derived from the
 * seed by splitmix64, and every variate is an inverse-CDF transform.
 * The heavy-tail noise is a Student-t(2) draw scaled multiplicatively by
 * 1 + 2|X^T beta|^3 / E|X^T beta|^3 (t(2) has no finite variance, so the
 * multiplier acts on the unit-scale draw).
 */
std::vector<synth_point> generate(const synth_config& config);

} // namespace cop
