#pragma once

#include "core_moments/numeric.hpp"
#include "core_moments/quadext.hpp"
#include "core_moments/spoly.hpp"

#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace core_moments {

/// Expression sum_i c_i(s) * r^i where the c_i are polynomials in s over
/// exact rationals and r stands for F_s / F_{s+1}. Closed-form moment
/// expressions live here: raw-moment fits have r-degree <= 1, the k-th
/// central moment r-degree <= k.
///
/// Distinct coefficient arrays can in principle agree at every integer s, so
/// equality of expressions is decided by evaluation over a range, never by
/// comparing coefficients.
class FibExpr {
public:
    FibExpr() = default;
    explicit FibExpr(SPoly constant_term) {
        if (!constant_term.is_zero()) r_terms_.push_back(std::move(constant_term));
    }

    static FibExpr zero() { return FibExpr(); }
    static FibExpr one() { return FibExpr(SPoly::one()); }
    static FibExpr constant(Rational c) { return FibExpr(SPoly(std::move(c))); }

    static FibExpr from_r_terms(std::vector<SPoly> terms) {
        FibExpr e;
        e.r_terms_ = std::move(terms);
        e.trim();
        return e;
    }

    bool is_zero() const { return r_terms_.empty(); }
    int r_degree() const { return static_cast<int>(r_terms_.size()) - 1; }

    const SPoly& r_term(int i) const {
        static const SPoly kZero;
        if (i < 0 || static_cast<std::size_t>(i) >= r_terms_.size()) return kZero;
        return r_terms_[static_cast<std::size_t>(i)];
    }

    const std::vector<SPoly>& r_terms() const { return r_terms_; }

    FibExpr& operator+=(const FibExpr& g) {
        if (r_terms_.size() < g.r_terms_.size()) r_terms_.resize(g.r_terms_.size());
        for (std::size_t i = 0; i < g.r_terms_.size(); ++i) r_terms_[i] += g.r_terms_[i];
        trim();
        return *this;
    }

    FibExpr& operator-=(const FibExpr& g) {
        if (r_terms_.size() < g.r_terms_.size()) r_terms_.resize(g.r_terms_.size());
        for (std::size_t i = 0; i < g.r_terms_.size(); ++i) r_terms_[i] -= g.r_terms_[i];
        trim();
        return *this;
    }

    friend FibExpr operator+(FibExpr f, const FibExpr& g) { f += g; return f; }
    friend FibExpr operator-(FibExpr f, const FibExpr& g) { f -= g; return f; }
    friend FibExpr operator-(const FibExpr& f) { return FibExpr() - f; }

    friend FibExpr operator*(const FibExpr& f, const FibExpr& g) {
        if (f.is_zero() || g.is_zero()) return FibExpr();
        FibExpr p;
        p.r_terms_.assign(f.r_terms_.size() + g.r_terms_.size() - 1, SPoly());
        for (std::size_t i = 0; i < f.r_terms_.size(); ++i) {
            if (f.r_terms_[i].is_zero()) continue;
            for (std::size_t j = 0; j < g.r_terms_.size(); ++j)
                p.r_terms_[i + j] += f.r_terms_[i] * g.r_terms_[j];
        }
        p.trim();
        return p;
    }

    FibExpr scaled(const Rational& c) const {
        FibExpr e;
        if (c == 0) return e;
        for (const auto& t : r_terms_) e.r_terms_.push_back(t.scaled(c));
        e.trim();
        return e;
    }

    FibExpr pow(unsigned e) const {
        FibExpr result = one();
        FibExpr base = *this;
        while (e > 0) {
            if (e & 1u) result = result * base;
            base = base * base;
            e >>= 1u;
        }
        return result;
    }

    /// Exact evaluation at integer s with r = fib_s / fib_s1.
    Rational eval(int s, const Integer& fib_s, const Integer& fib_s1) const {
        Rational r = make_rational(fib_s, fib_s1);
        return eval_at_r(s, r);
    }

    /// Exact evaluation at integer s with an arbitrary rational r.
    Rational eval_at_r(int s, const Rational& r) const {
        Rational value = 0;
        Rational si(s);
        for (auto it = r_terms_.rbegin(); it != r_terms_.rend(); ++it)
            value = value * r + it->eval(si);
        return value;
    }

    /// Substitutes an exact quadratic-field value for r (typically 1/phi),
    /// producing a polynomial in s over Q(sqrt(5)) as a trimmed coefficient
    /// vector (index = power of s).
    std::vector<QuadExt> substitute_r(const QuadExt& r) const {
        std::vector<QuadExt> out;
        QuadExt r_pow = QuadExt::one();
        for (const auto& term : r_terms_) {
            for (int j = 0; j <= term.degree(); ++j) {
                if (static_cast<int>(out.size()) <= j) out.resize(static_cast<std::size_t>(j) + 1);
                out[static_cast<std::size_t>(j)] =
                    out[static_cast<std::size_t>(j)] + QuadExt(term.coeff(j)) * r_pow;
            }
            r_pow = r_pow * r;
        }
        while (!out.empty() && out.back().is_zero()) out.pop_back();
        return out;
    }

    /// Canonical text form, r spelled as Fs/Fs1, highest r-power first:
    /// "(-3/25 - 3/25*s)*Fs/Fs1 + (7/50*s + 1/10*s^2)".
    std::string to_string() const {
        if (is_zero()) return "0";
        std::ostringstream out;
        bool first = true;
        for (int i = r_degree(); i >= 0; --i) {
            const SPoly& c = r_terms_[static_cast<std::size_t>(i)];
            if (c.is_zero()) continue;
            if (!first) out << " + ";
            first = false;
            out << "(" << c.to_string() << ")";
            if (i == 1) out << "*Fs/Fs1";
            else if (i > 1) out << "*(Fs/Fs1)^" << i;
        }
        return out.str();
    }

private:
    void trim() {
        while (!r_terms_.empty() && r_terms_.back().is_zero()) r_terms_.pop_back();
    }

    std::vector<SPoly> r_terms_;
};

namespace detail {

struct GroupedTerm {
    int s_power;
    int fs_power; // power of F_s; F_{s+1} carries r_degree - fs_power
    Integer coefficient;
};

} // namespace detail

/// Renders a FibExpr as a single fraction over the common denominator
/// d * F_{s+1}^R, e.g. for the expectation
///   (5*s^2*F[s+1] - 6*s*F[s] + 7*s*F[s+1] - 6*F[s]) / (50*F[s+1]).
/// Terms are ordered by descending power of s, then descending power of F_s.
/// If `latex` is set the rendering uses F_{s}, F_{s+1} and brace exponents.
inline std::string grouped_fraction_string(const FibExpr& e, bool latex = false) {
    if (e.is_zero()) return "0";
    int r_deg = e.r_degree();

    // Common denominator of every rational coefficient.
    Integer den = 1;
    for (int i = 0; i <= r_deg; ++i)
        for (const Rational& c : e.r_term(i).coeffs())
            den = boost::multiprecision::lcm(den, denominator(c));

    std::vector<detail::GroupedTerm> terms;
    int max_s_power = 0;
    for (int i = 0; i <= r_deg; ++i) max_s_power = std::max(max_s_power, e.r_term(i).degree());
    for (int sp = max_s_power; sp >= 0; --sp) {
        for (int i = r_deg; i >= 0; --i) {
            Rational c = e.r_term(i).coeff(sp);
            if (c == 0) continue;
            terms.push_back({sp, i, numerator(c) * (den / denominator(c))});
        }
    }

    auto fib_factor = [&](int power, const char* subscript) -> std::string {
        if (power == 0) return "";
        std::ostringstream f;
        if (latex) {
            f << "F_{" << subscript << "}";
            if (power > 1) f << "^{" << power << "}";
        } else {
            f << "F[" << subscript << "]";
            if (power > 1) f << "^" << power;
        }
        return f.str();
    };

    std::ostringstream num;
    bool first = true;
    for (const auto& t : terms) {
        Integer mag = t.coefficient < 0 ? Integer(-t.coefficient) : t.coefficient;
        if (first) {
            if (t.coefficient < 0) num << "-";
            first = false;
        } else {
            num << (t.coefficient < 0 ? " - " : " + ");
        }
        std::vector<std::string> factors;
        if (t.s_power > 0) {
            std::ostringstream sf;
            sf << "s";
            if (t.s_power > 1) {
                if (latex) sf << "^{" << t.s_power << "}";
                else sf << "^" << t.s_power;
            }
            factors.push_back(sf.str());
        }
        std::string fs = fib_factor(t.fs_power, "s");
        if (!fs.empty()) factors.push_back(fs);
        std::string fs1 = fib_factor(r_deg - t.fs_power, "s+1");
        if (!fs1.empty()) factors.push_back(fs1);

        if (mag != 1 || factors.empty()) num << mag;
        bool need_sep = mag != 1 || factors.empty();
        for (const auto& f : factors) {
            if (need_sep && !latex) num << "*";
            if (need_sep && latex) num << " ";
            num << f;
            need_sep = true;
        }
    }

    if (r_deg == 0 && den == 1) return "(" + num.str() + ")";

    std::ostringstream out;
    std::string denom_fib = fib_factor(r_deg, "s+1");
    if (latex) {
        out << "\\frac{" << num.str() << "}{" << den;
        if (!denom_fib.empty()) out << " " << denom_fib;
        out << "}";
    } else {
        out << "(" << num.str() << ") / (" << den;
        if (!denom_fib.empty()) out << "*" << denom_fib;
        out << ")";
    }
    return out.str();
}

} // namespace core_moments
