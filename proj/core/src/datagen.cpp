#include "cop/datagen.hpp"

#include "cop/errors.hpp"
#include "cop/rng.hpp"

#include <cmath>
#include <numbers>

namespace cop {

namespace {

std::array<double, 4> lerp(const std::array<double, 4>& from, const std::array<double, 4>& to,
                           std::size_t t, std::size_t n) {
    const double u = (n <= 1) ? 0.0
                              : static_cast<double>(t - 1) / static_cast<double>(n - 1);
    std::array<double, 4> beta{};
    for (int i = 0; i < 4; ++i) beta[i] = from[i] + u * (to[i] - from[i]);
    return beta;
}

double dot(const std::array<double, 4>& a, const std::array<double, 4>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

} // namespace

std::array<double, 4> synth_beta(synth_setting setting, std::size_t t, std::size_t n) {
    switch (setting) {
    case synth_setting::changepoint:
        if (t <= 500) return {2.0, 1.0, 0.0, 0.0};
        if (t <= 1500) return {0.0, -2.0, -1.0, 0.0};
        return {0.0, 0.0, 2.0, 1.0};
    case synth_setting::drift:
        return lerp({2.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 2.0, 1.0}, t, n);
    case synth_setting::var_changepoint:
    case synth_setting::heavy_tail:
        return {2.0, 1.0, 0.5, -0.5};
    case synth_setting::extreme_drift:
        return lerp({20.0, 10.0, 1.0, 1.0}, {1.0, 1.0, 20.0, 10.0}, t, n);
    }
    throw config_error("synth_beta: unknown setting");
}

double var_changepoint_sigma(std::size_t t) {
    if (t <= 500) return 1.0;
    if (t <= 1500) return 3.0;
    return 0.5;
}

double heavy_tail_expected_abs_cubed(const std::array<double, 4>& beta) {
    const double norm = std::sqrt(dot(beta, beta));
    return norm * norm * norm * 2.0 * std::sqrt(2.0 / std::numbers::pi);
}

std::vector<synth_point> generate(const synth_config& config) {
    if (config.n == 0) {
        throw config_error("generate: n must be positive");
    }
    // Substream 0 drives the covariates, substream 1 the noise.
    rng_stream x_stream(substream_seed(config.seed, 0));
    rng_stream eps_stream(substream_seed(config.seed, 1));

    const double e_abs3 =
        heavy_tail_expected_abs_cubed(synth_beta(config.setting, 1, config.n));

    std::vector<synth_point> out;
    out.reserve(config.n);
    for (std::size_t t = 1; t <= config.n; ++t) {
        synth_point pt;
        for (int i = 0; i < 4; ++i) pt.x[i] = x_stream.normal();
        const std::array<double, 4> beta = synth_beta(config.setting, t, config.n);
        const double mean = dot(pt.x, beta);

        double noise = 0.0;
        switch (config.setting) {
        case synth_setting::changepoint:
        case synth_setting::drift:
        case synth_setting::extreme_drift:
            noise = eps_stream.normal();
            break;
        case synth_setting::var_changepoint:
            noise = var_changepoint_sigma(t) * eps_stream.normal();
            break;
        case synth_setting::heavy_tail: {
            const double a = std::fabs(mean);
            const double scale = 1.0 + 2.0 * a * a * a / e_abs3;
            noise = scale * eps_stream.student_t2();
            break;
        }
        }
        pt.y = mean + noise;
        out.push_back(pt);
    }
    return out;
}

} // namespace cop
