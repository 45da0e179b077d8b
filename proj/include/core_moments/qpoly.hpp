#pragma once

#include "core_moments/numeric.hpp"

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace core_moments {

/// Dense polynomial in q with arbitrary-precision integer coefficients and
/// non-negative exponents. Canonical form: no trailing zero coefficients,
/// the zero polynomial has an empty coefficient vector.
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(Integer constant) {
        if (constant != 0) coeffs_.push_back(std::move(constant));
    }

    static QPoly zero() { return QPoly(); }
    static QPoly one() { return QPoly(Integer(1)); }

    static QPoly monomial(int exponent, Integer coeff = Integer(1)) {
        if (exponent < 0) throw std::invalid_argument("QPoly::monomial: negative exponent");
        QPoly p;
        if (coeff != 0) {
            p.coeffs_.assign(static_cast<std::size_t>(exponent) + 1, Integer(0));
            p.coeffs_.back() = std::move(coeff);
        }
        return p;
    }

    static QPoly from_coeffs(std::vector<Integer> coeffs) {
        QPoly p;
        p.coeffs_ = std::move(coeffs);
        p.trim();
        return p;
    }

    bool is_zero() const { return coeffs_.empty(); }

    /// Degree of the zero polynomial is -1.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    Integer coeff(int n) const {
        if (n < 0 || static_cast<std::size_t>(n) >= coeffs_.size()) return 0;
        return coeffs_[static_cast<std::size_t>(n)];
    }

    const std::vector<Integer>& coeffs() const { return coeffs_; }

    friend bool operator==(const QPoly& a, const QPoly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const QPoly& a, const QPoly& b) { return !(a == b); }

    QPoly& operator+=(const QPoly& other) {
        if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size());
        for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
        trim();
        return *this;
    }

    QPoly& operator-=(const QPoly& other) {
        if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size());
        for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
        trim();
        return *this;
    }

    friend QPoly operator+(QPoly a, const QPoly& b) { a += b; return a; }
    friend QPoly operator-(QPoly a, const QPoly& b) { a -= b; return a; }

    friend QPoly operator*(const QPoly& a, const QPoly& b) {
        if (a.is_zero() || b.is_zero()) return QPoly();
        QPoly p;
        p.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, Integer(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
                if (b.coeffs_[j] == 0) continue;
                p.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        p.trim();
        return p;
    }

    /// Multiplication by q^e.
    QPoly shifted(int e) const {
        if (e < 0) throw std::invalid_argument("QPoly::shifted: negative exponent");
        if (is_zero()) return QPoly();
        QPoly p;
        p.coeffs_.assign(coeffs_.size() + static_cast<std::size_t>(e), Integer(0));
        std::copy(coeffs_.begin(), coeffs_.end(), p.coeffs_.begin() + e);
        return p;
    }

    /// Adds q^e * other into this polynomial.
    QPoly& add_shifted(const QPoly& other, int e) {
        if (e < 0) throw std::invalid_argument("QPoly::add_shifted: negative exponent");
        std::size_t need = other.coeffs_.size() + static_cast<std::size_t>(e);
        if (!other.is_zero() && coeffs_.size() < need) coeffs_.resize(need);
        for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i + e] += other.coeffs_[i];
        trim();
        return *this;
    }

    Integer eval_one() const {
        Integer sum = 0;
        for (const Integer& c : coeffs_) sum += c;
        return sum;
    }

    /// The operator q * d/dq: multiplies the coefficient of q^n by n.
    QPoly theta() const {
        QPoly p = *this;
        for (std::size_t n = 0; n < p.coeffs_.size(); ++n) p.coeffs_[n] *= Integer(n);
        p.trim();
        return p;
    }

    /// Sum over n of n^k * coeff(n): the theta operator applied k times,
    /// then evaluated at q = 1, computed in a single pass.
    Integer power_sum(int k) const {
        if (k < 0) throw std::invalid_argument("QPoly::power_sum: negative order");
        if (k == 0) return eval_one();
        Integer sum = 0;
        for (std::size_t n = 1; n < coeffs_.size(); ++n) {
            if (coeffs_[n] == 0) continue;
            sum += int_pow(Integer(n), static_cast<unsigned>(k)) * coeffs_[n];
        }
        return sum;
    }

    /// Ascending-power rendering, e.g. "1 + q + q^2 + 2*q^3".
    std::string to_string(const std::string& var = "q") const {
        if (is_zero()) return "0";
        std::ostringstream out;
        bool first = true;
        for (std::size_t n = 0; n < coeffs_.size(); ++n) {
            const Integer& c = coeffs_[n];
            if (c == 0) continue;
            Integer mag = c < 0 ? Integer(-c) : c;
            if (first) {
                if (c < 0) out << "-";
                first = false;
            } else {
                out << (c < 0 ? " - " : " + ");
            }
            if (n == 0) {
                out << mag;
            } else {
                if (mag != 1) out << mag << "*";
                out << var;
                if (n > 1) out << "^" << n;
            }
        }
        return out.str();
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<Integer> coeffs_;
};

/// Gaussian binomial coefficient [n choose m]_q: the size generating function
/// of partitions fitting inside an m x (n-m) box. Zero when m > n.
/// Computed with the integer-only Pascal recursion
///   [n m] = [n-1 m-1] + q^m [n-1 m].
inline QPoly gaussian_binomial(int n, int m) {
    if (n < 0 || m < 0) throw std::invalid_argument("gaussian_binomial: negative argument");
    if (m > n) return QPoly::zero();
    if (m == 0 || m == n) return QPoly::one();
    // Rolling row over n; row[j] = [i choose j]_q for j <= min(i, m).
    std::vector<QPoly> row(static_cast<std::size_t>(m) + 1);
    row[0] = QPoly::one();
    for (int i = 1; i <= n; ++i) {
        int jmax = std::min(i, m);
        for (int j = jmax; j >= 1; --j) {
            if (j == i) {
                row[static_cast<std::size_t>(j)] = QPoly::one();
            } else {
                // In-place update walking j downward keeps row[j-1] from the previous i.
                row[static_cast<std::size_t>(j)] =
                    row[static_cast<std::size_t>(j - 1)] +
                    row[static_cast<std::size_t>(j)].shifted(j);
            }
        }
    }
    return row[static_cast<std::size_t>(m)];
}

/// Row-cached Gaussian binomial table for callers that sweep many (n, m)
/// pairs. Not synchronized: share one instance per thread.
class QBinomCache {
public:
    const QPoly& get(int n, int m) {
        if (n < 0 || m < 0) throw std::invalid_argument("QBinomCache::get: negative argument");
        if (m > n) return zero_;
        ensure_rows(n);
        return rows_[static_cast<std::size_t>(n)][static_cast<std::size_t>(m)];
    }

private:
    void ensure_rows(int n) {
        if (rows_.empty()) rows_.push_back({QPoly::one()});
        for (int i = static_cast<int>(rows_.size()); i <= n; ++i) {
            const auto& prev = rows_.back();
            std::vector<QPoly> row(static_cast<std::size_t>(i) + 1);
            row.front() = QPoly::one();
            row.back() = QPoly::one();
            for (int j = 1; j < i; ++j) {
                row[static_cast<std::size_t>(j)] =
                    prev[static_cast<std::size_t>(j - 1)] +
                    prev[static_cast<std::size_t>(j)].shifted(j);
            }
            rows_.push_back(std::move(row));
        }
    }

    std::vector<std::vector<QPoly>> rows_;
    QPoly zero_;
};

} // namespace core_moments
