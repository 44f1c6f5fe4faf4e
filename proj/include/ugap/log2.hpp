#pragma once

#include <cmath>
#include <compare>
#include <limits>

namespace ugap {

// Magnitude stored as its base-2 logarithm. Values like 4^-f with f in the
// hundreds stay representable; sign is tracked by the caller.
class Log2 {
public:
    constexpr Log2() = default;
    static constexpr Log2 from_log(double lg) { return Log2(lg); }
    static Log2 from_linear(double x) { return Log2(x > 0 ? std::log2(x) : -inf()); }
    static constexpr Log2 zero() { return Log2(-inf()); }

    constexpr double log() const { return lg_; }
    double linear() const { return std::exp2(lg_); }
    constexpr bool is_zero() const { return lg_ == -inf(); }

    friend constexpr Log2 operator*(Log2 a, Log2 b) { return Log2(a.lg_ + b.lg_); }
    friend constexpr Log2 operator/(Log2 a, Log2 b) { return Log2(a.lg_ - b.lg_); }
    friend Log2 operator+(Log2 a, Log2 b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        double hi = std::max(a.lg_, b.lg_), lo = std::min(a.lg_, b.lg_);
        return Log2(hi + std::log2(1.0 + std::exp2(lo - hi)));
    }
    // Requires a >= b.
    friend Log2 operator-(Log2 a, Log2 b) {
        if (b.is_zero()) return a;
        double d = b.lg_ - a.lg_;
        if (d >= 0) return zero();
        return Log2(a.lg_ + std::log2(-std::expm1(d * std::log(2.0))));
    }
    constexpr Log2 pow(double k) const { return Log2(lg_ * k); }
    friend constexpr auto operator<=>(Log2 a, Log2 b) = default;

private:
    constexpr explicit Log2(double lg) : lg_(lg) {}
    static constexpr double inf() { return std::numeric_limits<double>::infinity(); }
    double lg_ = -std::numeric_limits<double>::infinity();
};

}  // namespace ugap
