#pragma once

#include <cmath>
#include <cstdint>
#include <compare>
#include <numeric>
#include <stdexcept>
#include <string>

namespace a3c {

/// Thrown when 64-bit exact arithmetic would overflow.
struct OverflowError : std::runtime_error {
    OverflowError() : std::runtime_error("exact integer overflow") {}
};

/// Thrown on division by a zero rational.
struct DivisionByZero : std::runtime_error {
    DivisionByZero() : std::runtime_error("division by zero") {}
};

namespace detail {

inline std::int64_t checked(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw OverflowError{};
    return static_cast<std::int64_t>(v);
}

inline std::int64_t mul_i64(std::int64_t a, std::int64_t b) {
    return checked(static_cast<__int128>(a) * b);
}

inline std::int64_t add_i64(std::int64_t a, std::int64_t b) {
    return checked(static_cast<__int128>(a) + b);
}

} // namespace detail

/// Exact rational number on checked 64-bit words. Always stored reduced
/// with a positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { reduce(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_one() const { return num_ == 1 && den_ == 1; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ > 0 ? 1 : num_ < 0 ? -1 : 0; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        __int128 n = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
        __int128 d = static_cast<__int128>(a.den_) * b.den_;
        return make_reduced(n, d);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        __int128 n = static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_;
        __int128 d = static_cast<__int128>(a.den_) * b.den_;
        return make_reduced(n, d);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        __int128 n = static_cast<__int128>(a.num_) * b.num_;
        __int128 d = static_cast<__int128>(a.den_) * b.den_;
        return make_reduced(n, d);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw DivisionByZero{};
        __int128 n = static_cast<__int128>(a.num_) * b.den_;
        __int128 d = static_cast<__int128>(a.den_) * b.num_;
        return make_reduced(n, d);
    }
    Rational operator-() const {
        Rational r;
        r.num_ = detail::checked(-static_cast<__int128>(num_));
        r.den_ = den_;
        return r;
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        __int128 l = static_cast<__int128>(a.num_) * b.den_;
        __int128 r = static_cast<__int128>(b.num_) * a.den_;
        return l < r ? std::strong_ordering::less
             : l > r ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    Rational abs() const { return num_ < 0 ? -*this : *this; }
    Rational inverse() const { return Rational(1) / *this; }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// gcd of |a| and |b| as rationals: gcd(p/q, r/s) = gcd(p·s, r·q)/(q·s).
    static Rational gcd(const Rational& a, const Rational& b) {
        if (a.is_zero()) return b.abs();
        if (b.is_zero()) return a.abs();
        std::int64_t n = std::gcd(detail::mul_i64(a.num_, b.den_), detail::mul_i64(b.num_, a.den_));
        return Rational(n, detail::mul_i64(a.den_, b.den_));
    }

    /// Exact square root, if one exists.
    bool sqrt(Rational& out) const {
        if (num_ < 0) return false;
        auto isqrt = [](std::int64_t v, std::int64_t& r) {
            std::int64_t s = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
            for (std::int64_t c = s > 1 ? s - 2 : 0; c <= s + 2; ++c)
                if (c >= 0 && c * c == v) { r = c; return true; }
            return false;
        };
        std::int64_t rn, rd;
        if (!isqrt(num_, rn) || !isqrt(den_, rd)) return false;
        out = Rational(rn, rd);
        return true;
    }

private:
    static Rational make_reduced(__int128 n, __int128 d) {
        if (d == 0) throw DivisionByZero{};
        if (d < 0) { n = -n; d = -d; }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        Rational r;
        r.num_ = detail::checked(n);
        r.den_ = detail::checked(d);
        return r;
    }
    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }
    void reduce() { *this = make_reduced(num_, den_); }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline Rational abs(const Rational& r) { return r.abs(); }

} // namespace a3c
