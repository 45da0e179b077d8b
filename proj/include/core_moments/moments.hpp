#pragma once

#include "core_moments/genfunc.hpp"
#include "core_moments/numeric.hpp"
#include "core_moments/qpoly.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

namespace core_moments {

/// Exact standardized central moment. For even order the value itself is
/// rational and `value` holds central_k / variance^(k/2) directly. For odd
/// order only the square is rational: `value` holds central_k^2 / variance^k
/// and the real moment is sign * sqrt(value).
struct StandardizedMoment {
    int sign = 0;     // sign of the k-th central moment
    bool squared = false;
    Rational value;

    std::string to_decimal_string(int digits) const {
        if (!squared) return to_decimal(value, digits);
        return sqrt_to_decimal(value, sign, digits);
    }
};

/// Exact moments of the size statistic at one s: raw and central moments for
/// k = 0..max_k, plus the standardized forms.
struct MomentTable {
    int s = 0;
    std::vector<Rational> raw;
    std::vector<Rational> central;
    std::vector<StandardizedMoment> standardized; // entry 0 and 1 are trivial
};

/// Computes exact moments of the size of an (s,s+1)-core partition with
/// distinct parts. Generating functions come from the recurrence route: a
/// retained table up to `table_limit`, a constant-memory streaming pass for
/// larger s. Power sums are memoized per s. Not synchronized: use one engine
/// per thread.
class MomentEngine {
public:
    explicit MomentEngine(int table_limit = 128) : table_limit_(table_limit) {
        table_.max_s = 0;
        table_.method = GfMethod::Recurrence;
        table_.polys.resize(1);
    }

    Integer fibonacci(int n) {
        if (n < 1) throw std::invalid_argument("MomentEngine::fibonacci: n must be >= 1");
        while (static_cast<int>(fib_.size()) < n + 1) {
            if (fib_.size() < 3) {
                fib_ = {Integer(0), Integer(1), Integer(1)}; // index 0 unused
            } else {
                fib_.push_back(fib_[fib_.size() - 1] + fib_[fib_.size() - 2]);
            }
        }
        return fib_[static_cast<std::size_t>(n)];
    }

    /// G_s(q); only available on the retained-table path.
    const QPoly& gs(int s) {
        detail::check_positive_s(s, "MomentEngine::gs");
        if (s > table_limit_)
            throw std::invalid_argument("MomentEngine::gs: s exceeds the retained-table limit");
        ensure_table(s);
        return table_.at(s);
    }

    /// Sum over partition sizes n of n^k, i.e. the k-th power sum of the
    /// coefficients of G_s(q).
    Integer power_sum(int s, int k) {
        detail::check_positive_s(s, "MomentEngine::power_sum");
        if (k < 0) throw std::invalid_argument("MomentEngine::power_sum: negative order");
        auto it = sums_.find(s);
        if (it == sums_.end() || static_cast<int>(it->second.size()) <= k) {
            int want = std::max(k, kPrefetchOrder);
            if (s <= table_limit_) {
                compute_sums(s, gs(s), want);
            } else {
                for_each_gs_recurrence(s, [&](int i, const QPoly& g) {
                    if (i == s) compute_sums(s, g, want);
                });
            }
            it = sums_.find(s);
        }
        return it->second[static_cast<std::size_t>(k)];
    }

    /// E[X_s^k] = (k-th power sum of G_s) / F_{s+1}, exact.
    Rational raw_moment(int s, int k) {
        return make_rational(power_sum(s, k), fibonacci(s + 1));
    }

    /// E[(X_s - mu)^k] by binomial expansion over exact rationals.
    Rational central_moment(int s, int k) {
        detail::check_positive_s(s, "MomentEngine::central_moment");
        if (k < 0) throw std::invalid_argument("MomentEngine::central_moment: negative order");
        if (k == 0) return Rational(1);
        Rational mu = raw_moment(s, 1);
        Rational total = 0;
        Rational neg_mu_pow = 1; // (-mu)^(k-j), built from j = k downward
        for (int j = k; j >= 0; --j) {
            total += Rational(binomial(static_cast<unsigned>(k), static_cast<unsigned>(j))) *
                     neg_mu_pow * raw_moment(s, j);
            neg_mu_pow *= -mu;
        }
        return total;
    }

    Rational variance(int s) { return central_moment(s, 2); }

    /// Exact standardized central moment; see StandardizedMoment. Requires
    /// variance > 0, which fails only at s = 1.
    StandardizedMoment standardized_moment(int s, int k) {
        if (k < 0) throw std::invalid_argument("MomentEngine::standardized_moment: negative order");
        Rational var = variance(s);
        if (var == 0)
            throw std::domain_error("standardized_moment: variance is zero (s = 1)");
        Rational central = central_moment(s, k);
        StandardizedMoment out;
        out.sign = sign_of(central);
        if (k % 2 == 0) {
            out.squared = false;
            out.value = central / rat_pow(var, static_cast<unsigned>(k / 2));
        } else {
            out.squared = true;
            out.value = central * central / rat_pow(var, static_cast<unsigned>(k));
        }
        return out;
    }

    MomentTable moment_table(int s, int max_k) {
        MomentTable t;
        t.s = s;
        for (int k = 0; k <= max_k; ++k) t.raw.push_back(raw_moment(s, k));
        for (int k = 0; k <= max_k; ++k) t.central.push_back(central_moment(s, k));
        if (s >= 2)
            for (int k = 0; k <= max_k; ++k) t.standardized.push_back(standardized_moment(s, k));
        return t;
    }

    int table_limit() const { return table_limit_; }

private:
    // Streaming a large s costs a full recurrence pass, so grab a batch of
    // power-sum orders while the polynomial is in hand.
    static constexpr int kPrefetchOrder = 16;

    void ensure_table(int s) {
        if (table_.max_s >= s) return;
        int target = std::min(std::max(s, 2 * std::max(table_.max_s, 1)), table_limit_);
        table_ = gf_table_recurrence(target);
    }

    void compute_sums(int s, const QPoly& g, int max_k) {
        auto& sums = sums_[s];
        sums.assign(static_cast<std::size_t>(max_k) + 1, Integer(0));
        const auto& coeffs = g.coeffs();
        for (std::size_t n = 0; n < coeffs.size(); ++n) {
            if (coeffs[n] == 0) continue;
            Integer pw = coeffs[n]; // c_n * n^k accumulated incrementally
            sums[0] += pw;
            for (int k = 1; k <= max_k; ++k) {
                pw *= Integer(n);
                sums[static_cast<std::size_t>(k)] += pw;
            }
        }
    }

    int table_limit_;
    GfTable table_;
    std::vector<Integer> fib_;
    std::map<int, std::vector<Integer>> sums_;
};

} // namespace core_moments
