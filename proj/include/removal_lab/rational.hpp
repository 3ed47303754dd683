#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "removal_lab/errors.hpp"

namespace rlab {

// Exact rational arithmetic for densities, weights and epsilon thresholds.
// Numerators stay below ~n^2 for n <= 4000 and every product runs through
// __int128, so the int64 storage never overflows at the scales this library
// accepts; the checked narrowing is there to turn any miscalibration into a
// loud failure instead of silent wraparound.
struct rational {
    long long num = 0;
    long long den = 1;

    rational() = default;
    rational(long long v) : num(v), den(1) {}
    rational(long long n, long long d) : num(n), den(d) { normalize(); }

    static long long narrow(__int128 v) {
        if (v > INT64_MAX || v < INT64_MIN) fail(errc::consistency, "rational overflow");
        return (long long)v;
    }

    static rational make(__int128 n, __int128 d) {
        rational r;
        if (d == 0) fail(errc::parameter, "rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 a = n < 0 ? -n : n, b = d;
        while (b) { __int128 t = a % b; a = b; b = t; }
        if (a == 0) a = 1;
        r.num = narrow(n / a);
        r.den = narrow(d / a);
        return r;
    }

    void normalize() { *this = make(num, den); }

    friend rational operator+(rational a, rational b) {
        return make((__int128)a.num * b.den + (__int128)b.num * a.den, (__int128)a.den * b.den);
    }
    friend rational operator-(rational a, rational b) {
        return make((__int128)a.num * b.den - (__int128)b.num * a.den, (__int128)a.den * b.den);
    }
    friend rational operator*(rational a, rational b) {
        return make((__int128)a.num * b.num, (__int128)a.den * b.den);
    }
    friend rational operator/(rational a, rational b) {
        if (b.num == 0) fail(errc::parameter, "rational division by zero");
        return make((__int128)a.num * b.den, (__int128)a.den * b.num);
    }

    friend bool operator==(const rational& a, const rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const rational& a, const rational& b) { return !(a == b); }
    friend bool operator<(const rational& a, const rational& b) {
        return (__int128)a.num * b.den < (__int128)b.num * a.den;
    }
    friend bool operator<=(const rational& a, const rational& b) { return !(b < a); }
    friend bool operator>(const rational& a, const rational& b) { return b < a; }
    friend bool operator>=(const rational& a, const rational& b) { return !(a < b); }

    double to_double() const { return double(num) / double(den); }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

} // namespace rlab
