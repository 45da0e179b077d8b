#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace core_moments {

// All arithmetic in this library is exact. Integer coefficients and rational
// values are arbitrary precision; floating point appears only when a caller
// explicitly asks for a decimal rendering.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// cpp_rational's two-argument constructor rejects negative denominators,
// so normalize the sign first.
inline Rational make_rational(Integer num, Integer den) {
    if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    return Rational(num, den);
}

inline Integer numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

inline Integer int_pow(Integer base, unsigned exp) {
    Integer result = 1;
    while (exp > 0) {
        if (exp & 1u) result *= base;
        base *= base;
        exp >>= 1u;
    }
    return result;
}

inline Rational rat_pow(const Rational& base, unsigned exp) {
    return make_rational(int_pow(numerator(base), exp), int_pow(denominator(base), exp));
}

inline int sign_of(const Rational& r) {
    if (r > 0) return 1;
    if (r < 0) return -1;
    return 0;
}

// floor(sqrt(n)) for n >= 0.
inline Integer isqrt(const Integer& n) {
    if (n < 0) throw std::invalid_argument("isqrt: negative argument");
    return boost::multiprecision::sqrt(n);
}

inline Integer binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    Integer result = 1;
    for (unsigned i = 0; i < k; ++i) {
        result *= Integer(n - i);
        result /= Integer(i + 1);
    }
    return result;
}

namespace detail {

inline std::string decimal_from_scaled(Integer scaled, int digits, bool negative) {
    std::string s = scaled.str();
    if (static_cast<int>(s.size()) <= digits) s.insert(0, std::string(digits + 1 - s.size(), '0'));
    std::string whole = s.substr(0, s.size() - digits);
    std::string frac = s.substr(s.size() - digits);
    while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
    std::string out = whole + "." + frac;
    if (negative && (scaled != 0)) out.insert(0, "-");
    return out;
}

} // namespace detail

// Decimal rendering of a rational, truncated toward zero, with trailing
// zeros trimmed down to one fractional digit.
inline std::string to_decimal(const Rational& r, int digits) {
    if (digits < 1) throw std::invalid_argument("to_decimal: digits must be >= 1");
    Integer num = numerator(r);
    bool negative = num < 0;
    if (negative) num = -num;
    Integer scaled = num * int_pow(10, static_cast<unsigned>(digits)) / denominator(r);
    return detail::decimal_from_scaled(scaled, digits, negative);
}

// Decimal rendering of sign * sqrt(r), r >= 0, truncated toward zero.
inline std::string sqrt_to_decimal(const Rational& r, int sign, int digits) {
    if (digits < 1) throw std::invalid_argument("sqrt_to_decimal: digits must be >= 1");
    if (r < 0) throw std::invalid_argument("sqrt_to_decimal: negative radicand");
    // floor(sqrt(p/q) * 10^d) = isqrt(floor(p * 10^(2d) / q))
    Integer scaled = isqrt(numerator(r) * int_pow(10, static_cast<unsigned>(2 * digits)) / denominator(r));
    return detail::decimal_from_scaled(scaled, digits, sign < 0);
}

} // namespace core_moments
