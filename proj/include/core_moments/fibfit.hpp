#pragma once

#include "core_moments/fibexpr.hpp"
#include "core_moments/moments.hpp"
#include "core_moments/numeric.hpp"
#include "core_moments/quadext.hpp"
#include "core_moments/spoly.hpp"

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace core_moments {

class FitError : public std::runtime_error {
public:
    enum class Kind { NoFit, Underdetermined };

    FitError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

enum class SolveStatus { Ok, Inconsistent, RankDeficient };

/// Solves the integer system M x = b exactly for rational x, where `rows`
/// holds augmented rows [a_0 ... a_{n-1} | b]. Fraction-free (Bareiss)
/// elimination: every intermediate entry is an integer minor of the input,
/// divisions are exact. Requires rows.size() >= n; surplus rows act as
/// consistency constraints.
inline SolveStatus solve_exact(std::vector<std::vector<Integer>> rows, std::size_t n,
                               std::vector<Rational>& solution) {
    const std::size_t m = rows.size();
    if (m < n) throw std::invalid_argument("solve_exact: fewer rows than unknowns");
    for (const auto& row : rows)
        if (row.size() != n + 1) throw std::invalid_argument("solve_exact: bad row width");

    Integer prev_pivot = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < m && rows[pivot][col] == 0) ++pivot;
        if (pivot == m) return SolveStatus::RankDeficient;
        if (pivot != col) std::swap(rows[pivot], rows[col]);
        for (std::size_t i = col + 1; i < m; ++i) {
            for (std::size_t j = col + 1; j <= n; ++j) {
                rows[i][j] = (rows[col][col] * rows[i][j] - rows[i][col] * rows[col][j]) / prev_pivot;
            }
            rows[i][col] = 0;
        }
        prev_pivot = rows[col][col];
    }

    for (std::size_t i = n; i < m; ++i)
        if (rows[i][n] != 0) return SolveStatus::Inconsistent;

    solution.assign(n, Rational(0));
    for (std::size_t col = n; col-- > 0;) {
        Rational acc(rows[col][n]);
        for (std::size_t j = col + 1; j < n; ++j) acc -= Rational(rows[col][j]) * solution[j];
        solution[col] = acc / Rational(rows[col][col]);
    }
    return SolveStatus::Ok;
}

struct FitOptions {
    std::optional<int> degree;  // fixed polynomial degree bound; unset = auto (starts at 2k)
    int max_degree = 48;        // auto-escalation cap
    int sample_start = 2;       // smallest admissible s
    int extra_sample = 5;       // sample rows beyond the 2(D+1) unknowns
    int holdout = 20;           // validation points after the sample
};

struct FitResult {
    FibExpr expr;
    int k = 0;
    int degree = 0;          // polynomial degree bound used
    int sample_first = 0, sample_last = 0;
    int holdout_first = 0, holdout_last = 0;
    int values_confirmed = 0; // distinct s at which the identity was checked
};

enum class MomentKind { Raw, Central };

struct ValidationReport {
    bool pass = true;
    int values_confirmed = 0;
    int first_fail_s = 0;
    std::string expected, actual; // exact values at the first mismatch
};

/// Exact comparison of a fitted expression against recomputed moments over
/// [first, last].
inline ValidationReport validate_fit(MomentEngine& engine, const FibExpr& expr, int k,
                                     int first, int last, MomentKind kind = MomentKind::Raw) {
    ValidationReport report;
    for (int s = first; s <= last; ++s) {
        Rational truth = kind == MomentKind::Raw ? engine.raw_moment(s, k)
                                                 : engine.central_moment(s, k);
        Rational fitted = expr.eval(s, engine.fibonacci(s), engine.fibonacci(s + 1));
        if (truth != fitted) {
            report.pass = false;
            report.first_fail_s = s;
            std::ostringstream e, a;
            e << truth;
            a << fitted;
            report.expected = e.str();
            report.actual = a.str();
            return report;
        }
        ++report.values_confirmed;
    }
    return report;
}

/// Fits E[X_s^k] = A(s) * F_s/F_{s+1} + B(s) by exact linear algebra.
/// Multiplying through by F_{s+1} gives the integer-matrix system
///   sum_j b_j s^j F_{s+1} + sum_j a_j s^j F_s = (k-th power sum of G_s)
/// over the sample; the solution is validated on a disjoint holdout. With no
/// fixed degree the bound starts at 2k and escalates until the overdetermined
/// system is consistent and the holdout validates.
inline FitResult fit_raw_moment(MomentEngine& engine, int k, FitOptions options = {}) {
    if (k < 0) throw std::invalid_argument("fit_raw_moment: k must be >= 0");
    if (options.sample_start < 2)
        throw std::invalid_argument("fit_raw_moment: sample must start at s >= 2");
    if (k == 0) {
        FitResult r;
        r.expr = FibExpr::one();
        r.k = 0;
        return r;
    }

    const bool auto_degree = !options.degree.has_value();
    int degree = options.degree.value_or(2 * k);
    std::string last_failure;

    while (true) {
        const std::size_t unknowns = 2 * static_cast<std::size_t>(degree + 1);
        const int sample_count = static_cast<int>(unknowns) + options.extra_sample;
        const int sample_first = options.sample_start;
        const int sample_last = sample_first + sample_count - 1;
        const int holdout_first = sample_last + 1;
        const int holdout_last = sample_last + options.holdout;

        std::vector<std::vector<Integer>> rows;
        rows.reserve(static_cast<std::size_t>(sample_count));
        for (int s = sample_first; s <= sample_last; ++s) {
            Integer fs = engine.fibonacci(s);
            Integer fs1 = engine.fibonacci(s + 1);
            std::vector<Integer> row;
            row.reserve(unknowns + 1);
            Integer spow = 1;
            for (int j = 0; j <= degree; ++j) {
                row.push_back(spow * fs1);
                spow *= s;
            }
            spow = 1;
            for (int j = 0; j <= degree; ++j) {
                row.push_back(spow * fs);
                spow *= s;
            }
            row.push_back(engine.power_sum(s, k));
            rows.push_back(std::move(row));
        }

        std::vector<Rational> solution;
        SolveStatus status = solve_exact(std::move(rows), unknowns, solution);
        if (status == SolveStatus::RankDeficient)
            throw FitError(FitError::Kind::Underdetermined,
                           "fit_raw_moment: rank-deficient sample for k = " + std::to_string(k) +
                               " at degree bound " + std::to_string(degree));
        if (status == SolveStatus::Ok) {
            std::vector<Rational> b_coeffs(solution.begin(),
                                           solution.begin() + static_cast<long>(degree + 1));
            std::vector<Rational> a_coeffs(solution.begin() + static_cast<long>(degree + 1),
                                           solution.end());
            FibExpr expr = FibExpr::from_r_terms(
                {SPoly::from_coeffs(std::move(b_coeffs)), SPoly::from_coeffs(std::move(a_coeffs))});

            ValidationReport holdout =
                validate_fit(engine, expr, k, holdout_first, holdout_last, MomentKind::Raw);
            if (holdout.pass) {
                FitResult result;
                result.expr = std::move(expr);
                result.k = k;
                result.degree = degree;
                result.sample_first = sample_first;
                result.sample_last = sample_last;
                result.holdout_first = holdout_first;
                result.holdout_last = holdout_last;
                result.values_confirmed = sample_count + holdout.values_confirmed;
                return result;
            }
            last_failure = "holdout mismatch at s = " + std::to_string(holdout.first_fail_s) +
                           ": expected " + holdout.expected + ", fitted " + holdout.actual;
        } else {
            last_failure = "sample equations inconsistent at degree bound " + std::to_string(degree);
        }

        if (!auto_degree || degree >= options.max_degree)
            throw FitError(FitError::Kind::NoFit,
                           "fit_raw_moment: no fit for k = " + std::to_string(k) + " (" +
                               last_failure + ")");
        ++degree;
    }
}

/// The k-th central moment as a FibExpr, by binomial expansion
///   sum_j C(k,j) (-mu)^(k-j) E[X^j]
/// over FibExpr arithmetic; raw_fits[j] must hold the fit for E[X^j],
/// j = 1..k, and mu = raw_fits[1].
inline FibExpr central_moment_expr(int k, const std::vector<FibExpr>& raw_fits) {
    if (k < 0) throw std::invalid_argument("central_moment_expr: k must be >= 0");
    if (k == 0) return FibExpr::one();
    if (static_cast<int>(raw_fits.size()) <= k)
        throw std::invalid_argument("central_moment_expr: raw fits must cover moments 1..k");
    const FibExpr& mu = raw_fits[1];
    FibExpr total;
    FibExpr neg_mu_pow = FibExpr::one(); // (-mu)^(k-j), built from j = k downward
    for (int j = k; j >= 0; --j) {
        const FibExpr raw_j = j == 0 ? FibExpr::one() : raw_fits[static_cast<std::size_t>(j)];
        Rational binom(binomial(static_cast<unsigned>(k), static_cast<unsigned>(j)));
        total += (neg_mu_pow * raw_j).scaled(binom);
        neg_mu_pow = neg_mu_pow * (-mu);
    }
    return total;
}

struct LimitResult {
    bool diverges = false;
    QuadExt value;

    std::string to_string() const { return diverges ? "diverges" : value.to_string(); }
};

/// Limit as s -> infinity of the k-th standardized central moment, decided by
/// exact degree comparison after substituting r -> 1/phi = (sqrt(5)-1)/2.
/// With d the s-degree and a the leading coefficient of the substituted k-th
/// central moment, and the variance substituting to degree 3 with leading
/// coefficient v > 0:
///   2d < 3k  =>  0,    2d = 3k  =>  a / v^(k/2),    2d > 3k  =>  diverges.
inline LimitResult standardized_moment_limit(int k, const FibExpr& central_k,
                                             const FibExpr& variance) {
    if (k < 2) throw std::invalid_argument("standardized_moment_limit: k must be >= 2");
    const QuadExt inv_phi = QuadExt::inv_golden_ratio();

    std::vector<QuadExt> var_poly = variance.substitute_r(inv_phi);
    if (var_poly.size() != 4)
        throw std::domain_error("standardized_moment_limit: variance must have s-degree 3");
    const QuadExt v = var_poly.back();
    if (v.sign() <= 0)
        throw std::domain_error(
            "standardized_moment_limit: variance leading coefficient not positive");

    std::vector<QuadExt> central_poly = central_k.substitute_r(inv_phi);
    LimitResult result;
    if (central_poly.empty()) return result; // identically zero
    const int d = static_cast<int>(central_poly.size()) - 1;
    if (2 * d < 3 * k) return result; // value zero
    if (2 * d > 3 * k) {
        result.diverges = true;
        return result;
    }
    // 2d = 3k forces k even; no square roots are needed.
    result.value = central_poly.back() / v.pow(static_cast<unsigned>(k / 2));
    return result;
}

/// Standardized central moments of the standard normal law: 0 for odd k,
/// (k-1)!! for even k.
inline Integer normal_moment(int k) {
    if (k < 0) throw std::invalid_argument("normal_moment: k must be >= 0");
    if (k == 0) return 1;
    if (k % 2 == 1) return 0;
    Integer result = 1;
    for (int i = k - 1; i >= 3; i -= 2) result *= i;
    return result;
}

} // namespace core_moments
