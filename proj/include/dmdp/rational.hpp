#ifndef DMDP_RATIONAL_HPP
#define DMDP_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dmdp {

// Overflow-checked 64-bit helpers. Weight arithmetic must never wrap
// silently; any overflow is reported as std::overflow_error.
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("integer overflow in addition");
    return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r))
        throw std::overflow_error("integer overflow in subtraction");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("integer overflow in multiplication");
    return r;
}

/// Exact rational number over overflow-checked 64-bit integers.
/// Always kept in lowest terms with a positive denominator; the canonical
/// zero is 0/1. Values produced by policy evaluation are cycle averages, so
/// denominators stay small (bounded by the cycle length), but intermediate
/// sums are still range-checked.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT: implicit by design
    Rational(std::int64_t numerator, std::int64_t denominator) {
        if (denominator == 0)
            throw std::invalid_argument("rational with zero denominator");
        __int128 n = numerator;
        __int128 d = denominator;
        if (d < 0) { n = -n; d = -d; }
        assign_reduced(n, d);
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_integer() const { return den_ == 1; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        // Cross-multiplication in 128 bits is exact for any int64 operands.
        return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        __int128 n = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
        __int128 d = static_cast<__int128>(a.den_) * b.den_;
        Rational r;
        r.assign_reduced(n, d);
        return r;
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        __int128 n = static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_;
        __int128 d = static_cast<__int128>(a.den_) * b.den_;
        Rational r;
        r.assign_reduced(n, d);
        return r;
    }
    friend Rational operator-(const Rational& a) {
        Rational r;
        r.num_ = checked_sub(0, a.num_);
        r.den_ = a.den_;
        return r;
    }

    /// Adding an integer keeps the value reduced: gcd(n + w*d, d) = gcd(n, d).
    Rational plus_int(std::int64_t w) const {
        Rational r;
        r.num_ = checked_add(num_, checked_mul(w, den_));
        r.den_ = den_;
        return r;
    }

    /// "p/q", or just "p" when the denominator is 1.
    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

  private:
    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a < 0 ? -a : a;
    }

    void assign_reduced(__int128 n, __int128 d) {
        if (n == 0) { num_ = 0; den_ = 1; return; }
        __int128 g = gcd128(n, d);
        n /= g; d /= g;
        if (n < INT64_MIN || n > INT64_MAX || d > INT64_MAX)
            throw std::overflow_error("rational out of 64-bit range");
        num_ = static_cast<std::int64_t>(n);
        den_ = static_cast<std::int64_t>(d);
    }

    std::int64_t num_;
    std::int64_t den_;
};

}  // namespace dmdp

#endif
