#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace macc {

/// Exact positive rational, kept in lowest terms. Used for action durations
/// before LCM scaling and for the alpha coefficient.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
        if (den == 0) throw std::invalid_argument("rational: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        reduce();
    }
    explicit Rational(std::int64_t n) : num(n), den(1) {}

    void reduce() {
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    bool positive() const { return num > 0; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num * b.den < b.num * a.den;
    }

    Rational operator+(const Rational& o) const {
        return Rational(num * o.den + o.num * den, den * o.den);
    }
    Rational operator*(const Rational& o) const {
        return Rational(num * o.num, den * o.den);
    }
    Rational operator/(std::int64_t k) const { return Rational(num, den * k); }

    /// Smallest integer >= num/den (num, den > 0).
    std::int64_t ceil() const { return (num + den - 1) / den; }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    /// Parses "p" or "p/q" with p, q positive integers.
    static Rational parse(const std::string& text);
};

}  // namespace macc
