#pragma once

#include "core_moments/numeric.hpp"

#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace core_moments {

/// Polynomial in the formal variable s over exact rationals, canonical form
/// (no trailing zero coefficients).
class SPoly {
public:
    SPoly() = default;
    explicit SPoly(Rational constant) {
        if (constant != 0) coeffs_.push_back(std::move(constant));
    }

    static SPoly zero() { return SPoly(); }
    static SPoly one() { return SPoly(Rational(1)); }

    static SPoly from_coeffs(std::vector<Rational> coeffs) {
        SPoly p;
        p.coeffs_ = std::move(coeffs);
        p.trim();
        return p;
    }

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    Rational coeff(int j) const {
        if (j < 0 || static_cast<std::size_t>(j) >= coeffs_.size()) return Rational(0);
        return coeffs_[static_cast<std::size_t>(j)];
    }

    Rational leading() const {
        if (is_zero()) throw std::domain_error("SPoly::leading: zero polynomial");
        return coeffs_.back();
    }

    const std::vector<Rational>& coeffs() const { return coeffs_; }

    friend bool operator==(const SPoly& f, const SPoly& g) { return f.coeffs_ == g.coeffs_; }
    friend bool operator!=(const SPoly& f, const SPoly& g) { return !(f == g); }

    SPoly& operator+=(const SPoly& g) {
        if (coeffs_.size() < g.coeffs_.size()) coeffs_.resize(g.coeffs_.size());
        for (std::size_t j = 0; j < g.coeffs_.size(); ++j) coeffs_[j] += g.coeffs_[j];
        trim();
        return *this;
    }

    SPoly& operator-=(const SPoly& g) {
        if (coeffs_.size() < g.coeffs_.size()) coeffs_.resize(g.coeffs_.size());
        for (std::size_t j = 0; j < g.coeffs_.size(); ++j) coeffs_[j] -= g.coeffs_[j];
        trim();
        return *this;
    }

    friend SPoly operator+(SPoly f, const SPoly& g) { f += g; return f; }
    friend SPoly operator-(SPoly f, const SPoly& g) { f -= g; return f; }
    friend SPoly operator-(const SPoly& f) { return SPoly() - f; }

    friend SPoly operator*(const SPoly& f, const SPoly& g) {
        if (f.is_zero() || g.is_zero()) return SPoly();
        SPoly p;
        p.coeffs_.assign(f.coeffs_.size() + g.coeffs_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < f.coeffs_.size(); ++i) {
            if (f.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < g.coeffs_.size(); ++j)
                p.coeffs_[i + j] += f.coeffs_[i] * g.coeffs_[j];
        }
        p.trim();
        return p;
    }

    SPoly scaled(const Rational& c) const {
        if (c == 0) return SPoly();
        SPoly p = *this;
        for (auto& x : p.coeffs_) x *= c;
        return p;
    }

    Rational eval(const Rational& s) const {
        Rational value = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) value = value * s + *it;
        return value;
    }

    Rational eval(const Integer& s) const { return eval(Rational(s)); }

    /// Ascending-power rendering, e.g. "7/50*s + 1/10*s^2".
    std::string to_string(const std::string& var = "s") const {
        if (is_zero()) return "0";
        std::ostringstream out;
        bool first = true;
        for (std::size_t j = 0; j < coeffs_.size(); ++j) {
            const Rational& c = coeffs_[j];
            if (c == 0) continue;
            Rational mag = c < 0 ? Rational(-c) : c;
            if (first) {
                if (c < 0) out << "-";
                first = false;
            } else {
                out << (c < 0 ? " - " : " + ");
            }
            if (j == 0) {
                out << mag;
            } else {
                if (mag != 1) out << mag << "*";
                out << var;
                if (j > 1) out << "^" << j;
            }
        }
        return out.str();
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<Rational> coeffs_;
};

} // namespace core_moments
