#include "cop/score_window.hpp"

#include "cop/errors.hpp"

#include <algorithm>
#include <cmath>

namespace cop {

score_window::score_window(std::size_t capacity) {
    if (capacity == 0) {
        throw config_error("score_window: capacity must be positive");
    }
    buffer_.resize(capacity, 0.0);
}

void score_window::push(double score) {
    const std::size_t cap = buffer_.size();
    if (size_ < cap) {
        buffer_[(head_ + size_) % cap] = score;
        ++size_;
    } else {
        buffer_[head_] = score;
        head_ = (head_ + 1) % cap;
    }
}

double score_window::operator[](std::size_t i) const {
    return buffer_[(head_ + i) % buffer_.size()];
}

double score_window::max() const {
    if (empty()) throw estimator_unready_error("score_window: max of empty window");
    double m = (*this)[0];
    for (std::size_t i = 1; i < size_; ++i) m = std::max(m, (*this)[i]);
    return m;
}

double score_window::min() const {
    if (empty()) throw estimator_unready_error("score_window: min of empty window");
    double m = (*this)[0];
    for (std::size_t i = 1; i < size_; ++i) m = std::min(m, (*this)[i]);
    return m;
}

double score_window::mean() const {
    if (empty()) throw estimator_unready_error("score_window: mean of empty window");
    double s = 0.0;
    for (std::size_t i = 0; i < size_; ++i) s += (*this)[i];
    return s / static_cast<double>(size_);
}

double score_window::sample_std() const {
    if (size_ < 2) throw estimator_unready_error("score_window: sample_std needs >= 2 scores");
    const double m = mean();
    double ss = 0.0;
    for (std::size_t i = 0; i < size_; ++i) {
        const double d = (*this)[i] - m;
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(size_ - 1));
}

double score_window::order_statistic(double p) const {
    if (empty()) throw estimator_unready_error("score_window: quantile of empty window");
    std::vector<double> sorted = values();
    std::sort(sorted.begin(), sorted.end());
    const auto n = static_cast<double>(size_);
    auto idx = static_cast<long>(std::ceil(p * n));
    idx = std::clamp(idx, 1L, static_cast<long>(size_));
    return sorted[static_cast<std::size_t>(idx - 1)];
}

double score_window::iqr() const {
    return order_statistic(0.75) - order_statistic(0.25);
}

std::vector<double> score_window::values() const {
    std::vector<double> out;
    out.reserve(size_);
    for (std::size_t i = 0; i < size_; ++i) out.push_back((*this)[i]);
    return out;
}

} // namespace cop
