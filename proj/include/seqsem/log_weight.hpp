#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace seqsem {

inline constexpr double kLogZero = -std::numeric_limits<double>::infinity();

/// log(e^a + e^b)
inline double log_add(double a, double b) noexcept {
    if (a == kLogZero) return b;
    if (b == kLogZero) return a;
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(std::min(a, b) - m));
}

/// Streaming log-sum-exp.
class LogSum {
public:
    void add(double x) noexcept {
        if (x == kLogZero) return;
        if (x <= max_) {
            sum_ += std::exp(x - max_);
        } else {
            sum_ = sum_ * std::exp(max_ - x) + 1.0;
            max_ = x;
        }
    }
    double value() const noexcept { return max_ == kLogZero ? kLogZero : max_ + std::log(sum_); }

private:
    double max_ = kLogZero;
    double sum_ = 0.0;
};

/// Nonnegative real stored as its natural log; zero is -infinity.
class LogWeight {
public:
    constexpr LogWeight() = default;
    static LogWeight from_log(double v) noexcept { return LogWeight(std::isnan(v) ? kLogZero : v); }
    static constexpr LogWeight zero() noexcept { return LogWeight(); }
    static constexpr LogWeight one() noexcept { return LogWeight(0.0); }

    constexpr double log() const noexcept { return value_; }
    double linear() const noexcept { return std::exp(value_); }
    constexpr bool is_zero() const noexcept { return value_ == kLogZero; }

    friend LogWeight operator*(LogWeight a, LogWeight b) noexcept {
        if (a.is_zero() || b.is_zero()) return zero();
        return LogWeight(a.value_ + b.value_);
    }
    friend LogWeight operator+(LogWeight a, LogWeight b) noexcept { return LogWeight(log_add(a.value_, b.value_)); }
    friend constexpr bool operator==(LogWeight, LogWeight) = default;

private:
    constexpr explicit LogWeight(double v) : value_(v) {}
    double value_ = kLogZero;
};

}  // namespace seqsem
