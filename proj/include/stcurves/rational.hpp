#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace stcurves {

// Exact rational on 64-bit words with __int128 intermediates.  Carries
// exponents of roots of unity and formal powers of the twist constant c,
// and the exact moment values; all of these stay far below the word size,
// but every operation still checks.
class Rat {
public:
    constexpr Rat() = default;
    constexpr Rat(long long n) : num_(n) {}
    Rat(long long n, long long d) : num_(n), den_(d) { normalize(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                    i128(a.den_) * b.den_);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                    i128(a.den_) * b.den_);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num_ == 0) throw std::domain_error("Rat: division by zero");
        return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }
    Rat operator-() const { Rat r(*this); r.num_ = -r.num_; return r; }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }

    // Representative in [0, 1).
    Rat mod1() const {
        long long r = num_ % den_;
        if (r < 0) r += den_;
        return Rat(r, den_);
    }

    double to_double() const { return double(num_) / double(den_); }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    using i128 = __int128;

    static Rat make(i128 n, i128 d) {
        if (d == 0) throw std::domain_error("Rat: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        i128 an = n < 0 ? -n : n;
        i128 g = gcd128(an, d);
        if (g > 1) { n /= g; d /= g; }
        Rat r;
        r.num_ = narrow(n);
        r.den_ = narrow(d);
        return r;
    }
    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) { i128 t = a % b; a = b; b = t; }
        return a < 0 ? -a : a;
    }
    static long long narrow(i128 v) {
        if (v > i128(INT64_MAX) || v < i128(INT64_MIN))
            throw std::overflow_error("Rat: 64-bit overflow");
        return (long long)v;
    }
    void normalize() {
        Rat r = make(num_, den_);
        num_ = r.num_;
        den_ = r.den_;
    }

    long long num_ = 0;
    long long den_ = 1;
};

}  // namespace stcurves
