#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

namespace ianet {

/**
 * Exact rational number on 64-bit integers.
 *
 * Temporal factors and filter rates are kept as rationals so the shape
 * calculus is lossless; conversion to double happens only at reporting
 * boundaries. Always stored normalized (gcd 1, positive denominator).
 */
struct Ratio {
    std::int64_t num = 0;
    std::int64_t den = 1;

    constexpr Ratio() = default;
    constexpr Ratio(std::int64_t n) : num(n), den(1) {}
    Ratio(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::invalid_argument("Ratio: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }

    bool is_integer() const { return den == 1; }
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }

    /// count * ratio when the product is an exact integer, nullopt otherwise.
    std::optional<std::int64_t> times_exact(std::int64_t count) const {
        const __int128 p = static_cast<__int128>(num) * count;
        if (p % den != 0) return std::nullopt;
        const __int128 q = p / den;
        if (q > INT64_MAX || q < INT64_MIN) throw std::overflow_error("Ratio::times_exact");
        return static_cast<std::int64_t>(q);
    }

    friend Ratio operator*(const Ratio& a, const Ratio& b) {
        // Cross-reduce before multiplying to keep intermediates small.
        Ratio x(a.num, b.den);
        Ratio y(b.num, a.den);
        return Ratio(x.num * y.num, x.den * y.den);
    }
    friend Ratio operator/(const Ratio& a, const Ratio& b) {
        if (b.num == 0) throw std::invalid_argument("Ratio: division by zero");
        return a * Ratio(b.den, b.num);
    }
    friend Ratio operator*(std::int64_t k, const Ratio& r) { return Ratio(k) * r; }

    friend bool operator==(const Ratio& a, const Ratio& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Ratio& a, const Ratio& b) { return !(a == b); }
    friend bool operator<(const Ratio& a, const Ratio& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator>(const Ratio& a, const Ratio& b) { return b < a; }
    friend bool operator<=(const Ratio& a, const Ratio& b) { return !(b < a); }
    friend bool operator>=(const Ratio& a, const Ratio& b) { return !(a < b); }
};

} // namespace ianet
