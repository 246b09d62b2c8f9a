#include "cop/forecaster.hpp"

#include "cop/errors.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace cop {

namespace {

// Gaussian elimination with partial pivoting on a 4x4 system.
// Returns false when a pivot degenerates.
bool solve4(std::array<std::array<double, 4>, 4> a, std::array<double, 4> b,
            std::array<double, 4>& out) {
    double max_abs = 0.0;
    for (const auto& row : a) {
        for (double v : row) max_abs = std::max(max_abs, std::fabs(v));
    }
    const double tol = 1e-12 * std::max(max_abs, 1.0);

    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 4; ++r) {
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
        }
        if (std::fabs(a[pivot][col]) < tol) return false;
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (int r = col + 1; r < 4; ++r) {
            const double f = a[r][col] / a[col][col];
            for (int c = col; c < 4; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    for (int r = 3; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < 4; ++c) s -= a[r][c] * out[c];
        out[r] = s / a[r][r];
    }
    return true;
}

// Final SES level over data for smoothing parameter s.
double ses_level(const std::vector<double>& data, double s) {
    double level = data[0];
    for (std::size_t j = 1; j < data.size(); ++j) {
        level = s * data[j] + (1.0 - s) * level;
    }
    return level;
}

// In-sample one-step squared error of SES with parameter s.
double ses_sse(const std::vector<double>& data, double s) {
    double level = data[0];
    double sse = 0.0;
    for (std::size_t j = 1; j < data.size(); ++j) {
        const double e = data[j] - level;
        sse += e * e;
        level = s * data[j] + (1.0 - s) * level;
    }
    return sse;
}

} // namespace

side_scores score_pair(double y, double y_hat) {
    if (!std::isfinite(y) || !std::isfinite(y_hat)) {
        throw stream_error("score_pair: non-finite input");
    }
    return {y_hat - y, y - y_hat};
}

forecaster::forecaster(predictor_kind kind, std::size_t fit_window)
    : kind_(kind), fit_window_(fit_window) {
    if (fit_window_ == 0) {
        throw config_error("forecaster: fit window must be positive");
    }
}

void forecaster::observe(double y) {
    if (!std::isfinite(y)) {
        throw stream_error("forecaster: non-finite observation");
    }
    history_.push_back(y);
}

double forecaster::forecast() const {
    if (history_.empty()) return 0.0;
    return kind_ == predictor_kind::ar3 ? ar_forecast() : theta_forecast();
}

double forecaster::ar_forecast() const {
    constexpr std::size_t p = 3;
    const std::size_t n = history_.size();
    if (n < p + 1) {
        return history_.back();
    }

    const std::size_t lo = std::max(p, n >= fit_window_ ? n - fit_window_ : 0);

    std::array<std::array<double, 4>, 4> ata{};
    std::array<double, 4> atb{};
    for (std::size_t i = lo; i < n; ++i) {
        const std::array<double, 4> x = {history_[i - 1], history_[i - 2], history_[i - 3], 1.0};
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) ata[r][c] += x[r] * x[c];
            atb[r] += x[r] * history_[i];
        }
    }

    std::array<double, 4> w{};
    if (!solve4(ata, atb, w)) {
        for (int d = 0; d < 4; ++d) ata[d][d] += 1e-6; // ridge fallback
        if (!solve4(ata, atb, w)) {
            return history_.back();
        }
    }
    return w[0] * history_[n - 1] + w[1] * history_[n - 2] + w[2] * history_[n - 3] + w[3];
}

double forecaster::theta_forecast() const {
    const std::size_t full = history_.size();
    if (full < 3) {
        return history_.back();
    }
    const std::size_t lo = full >= fit_window_ ? full - fit_window_ : 0;
    const std::vector<double> z(history_.begin() + static_cast<std::ptrdiff_t>(lo),
                                history_.end());
    const std::size_t n = z.size();
    const double nd = static_cast<double>(n);

    // OLS line z_j ~ a + b*(j+1); the theta = 0 long-term trend.
    double sum_t = 0.0, sum_z = 0.0, sum_tt = 0.0, sum_tz = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double t = static_cast<double>(j + 1);
        sum_t += t;
        sum_z += z[j];
        sum_tt += t * t;
        sum_tz += t * z[j];
    }
    const double denom = nd * sum_tt - sum_t * sum_t;
    const double b = (nd * sum_tz - sum_t * sum_z) / denom;
    const double a = (sum_z - b * sum_t) / nd;
    const double trend_line = a + b * (nd + 1.0);

    // theta = 2 series amplifies curvature around the fitted trend.
    std::vector<double> theta2(n);
    for (std::size_t j = 0; j < n; ++j) {
        theta2[j] = 2.0 * z[j] - (a + b * static_cast<double>(j + 1));
    }

    double best_s = 0.01;
    double best_sse = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 99; ++k) {
        const double s = 0.01 * k;
        const double sse = ses_sse(theta2, s);
        if (sse < best_sse) {
            best_sse = sse;
            best_s = s;
        }
    }

    // Correct the SES lag exactly: on a unit-slope ramp of the same length
    // the level trails the last observation by n - ses_level(ramp), so a
    // series with local slope b needs b*(lag + 1) to land one step ahead.
    std::vector<double> ramp(n);
    for (std::size_t j = 0; j < n; ++j) ramp[j] = static_cast<double>(j + 1);
    const double lag = nd - ses_level(ramp, best_s);
    const double ses_line = ses_level(theta2, best_s) + b * (lag + 1.0);

    return 0.5 * (trend_line + ses_line);
}

} // namespace cop
