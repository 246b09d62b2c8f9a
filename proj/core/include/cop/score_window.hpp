#pragma once

#include <cstddef>
#include <vector>

namespace cop {

/**
 * Bounded FIFO of recent non-conformity scores.
 *
 * Backs both the windowed CDF estimators and the window-adaptive learning
 * rate. Eviction is strictly oldest-first; capacity is fixed at construction
 * (default 100 everywhere in the harness).
 */
class score_window {
public:
    explicit score_window(std::size_t capacity);

    void push(double score);

    std::size_t size() const { return size_; }
    std::size_t capacity() const { return buffer_.size(); }
    bool empty() const { return size_ == 0; }

    /// i = 0 is the oldest retained score.
    double operator[](std::size_t i) const;

    double max() const;
    double min() const;
    double range() const { return max() - min(); }

    double mean() const;
    /// Sample standard deviation (n-1 denominator); requires size >= 2.
    double sample_std() const;

    /// Order statistic at index ceil(p*n), clipped to [1, n].
    double order_statistic(double p) const;
    /// q75 - q25 under the same order-statistic convention.
    double iqr() const;

    /// Scores oldest-first.
    std::vector<double> values() const;

private:
    std::vector<double> buffer_; // ring storage, length == capacity
    std::size_t head_ = 0;       // index of the oldest element
    std::size_t size_ = 0;
};

} // namespace cop
