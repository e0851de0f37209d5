#pragma once

#include <cmath>
#include <cstdint>

namespace salbound {

// Welford accumulator with the pairwise (parallel) merge.
class RunningStats {
public:
    void add(double x) noexcept {
        ++count_;
        const double d = x - mean_;
        mean_ += d / static_cast<double>(count_);
        m2_ += d * (x - mean_);
    }

    void merge(const RunningStats& other) noexcept {
        if (other.count_ == 0) return;
        if (count_ == 0) {
            *this = other;
            return;
        }
        const double n1 = static_cast<double>(count_);
        const double n2 = static_cast<double>(other.count_);
        const double d = other.mean_ - mean_;
        const double n = n1 + n2;
        mean_ += d * n2 / n;
        m2_ += other.m2_ + d * d * n1 * n2 / n;
        count_ += other.count_;
    }

    std::uint64_t count() const noexcept { return count_; }
    double mean() const noexcept { return mean_; }
    double variance() const noexcept {
        return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0;
    }
    double standard_error() const noexcept {
        return count_ > 0 ? std::sqrt(variance() / static_cast<double>(count_)) : 0.0;
    }

private:
    std::uint64_t count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

}  // namespace salbound
