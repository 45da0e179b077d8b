#pragma once

#include "core_moments/numeric.hpp"

#include <sstream>
#include <stdexcept>
#include <string>

namespace core_moments {

/// Element a + b*sqrt(5) of the real quadratic field Q(sqrt(5)), with exact
/// rational components. Sign decisions use the real embedding sqrt(5) > 0
/// via rational case analysis, never floating point.
struct QuadExt {
    Rational a;
    Rational b;

    QuadExt() = default;
    explicit QuadExt(Rational rational_part) : a(std::move(rational_part)) {}
    QuadExt(Rational rational_part, Rational surd_part)
        : a(std::move(rational_part)), b(std::move(surd_part)) {}

    static QuadExt zero() { return QuadExt(); }
    static QuadExt one() { return QuadExt(Rational(1)); }

    /// The Golden Ratio (1 + sqrt(5)) / 2.
    static QuadExt golden_ratio() { return QuadExt(Rational(1, 2), Rational(1, 2)); }

    /// 1/phi = (sqrt(5) - 1) / 2, the limit of F_s / F_{s+1}.
    static QuadExt inv_golden_ratio() { return QuadExt(Rational(-1, 2), Rational(1, 2)); }

    bool is_zero() const { return a == 0 && b == 0; }
    bool is_rational() const { return b == 0; }

    friend bool operator==(const QuadExt& x, const QuadExt& y) { return x.a == y.a && x.b == y.b; }
    friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }

    friend QuadExt operator+(const QuadExt& x, const QuadExt& y) { return {x.a + y.a, x.b + y.b}; }
    friend QuadExt operator-(const QuadExt& x, const QuadExt& y) { return {x.a - y.a, x.b - y.b}; }
    friend QuadExt operator-(const QuadExt& x) { return {-x.a, -x.b}; }

    friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
        return {x.a * y.a + Rational(5) * x.b * y.b, x.a * y.b + x.b * y.a};
    }

    friend QuadExt operator/(const QuadExt& x, const QuadExt& y) {
        Rational norm = y.a * y.a - Rational(5) * y.b * y.b; // (a+b√5)(a−b√5)
        if (norm == 0) {
            if (y.is_zero()) throw std::domain_error("QuadExt: division by zero");
            throw std::domain_error("QuadExt: division by zero-norm element"); // impossible over Q
        }
        QuadExt conj{y.a, -y.b};
        QuadExt num = x * conj;
        return {num.a / norm, num.b / norm};
    }

    QuadExt pow(unsigned e) const {
        QuadExt result = one();
        QuadExt base = *this;
        while (e > 0) {
            if (e & 1u) result = result * base;
            base = base * base;
            e >>= 1u;
        }
        return result;
    }

    /// Sign under the real embedding: sgn(a + b*sqrt(5)).
    int sign() const {
        int sa = sign_of(a), sb = sign_of(b);
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        // Opposite signs: compare a^2 against 5 b^2; the larger magnitude wins.
        Rational lhs = a * a, rhs = Rational(5) * b * b;
        if (lhs == rhs) return 0; // impossible: sqrt(5) is irrational
        return (lhs > rhs) ? sa : sb;
    }

    std::string to_string() const {
        std::ostringstream out;
        if (b == 0) {
            out << a;
        } else {
            out << a << (b < 0 ? " - " : " + ");
            Rational mag = b < 0 ? Rational(-b) : b;
            if (mag != 1) out << mag << "*";
            out << "sqrt(5)";
        }
        return out.str();
    }

    /// Decimal rendering a + b*sqrt(5), truncated toward zero.
    std::string to_decimal_string(int digits) const {
        // Work at extra precision, then truncate: |a + b*sqrt5 - approx| stays
        // below the final digit.
        int guard = digits + 10;
        Integer scale = int_pow(10, static_cast<unsigned>(guard));
        Integer ai = numerator(a) * scale / denominator(a);
        Integer sq = isqrt(numerator(b * b) * scale * scale * 5 / denominator(b * b));
        if (b < 0) sq = -sq;
        Integer total = ai + sq;
        bool negative = total < 0;
        if (negative) total = -total;
        total /= int_pow(10, static_cast<unsigned>(guard - digits));
        return detail::decimal_from_scaled(total, digits, negative);
    }
};

} // namespace core_moments
