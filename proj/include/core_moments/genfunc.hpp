#pragma once

#include "core_moments/numeric.hpp"
#include "core_moments/partition.hpp"
#include "core_moments/qpoly.hpp"

#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace core_moments {

/// Fibonacci numbers with F_1 = F_2 = 1, so that the count of (s,s+1)-core
/// partitions with distinct parts is F_{s+1}.
inline Integer fibonacci(int n) {
    if (n < 1) throw std::invalid_argument("fibonacci: n must be >= 1");
    Integer a = 1, b = 1; // F_1, F_2
    for (int i = 2; i < n; ++i) {
        Integer c = a + b;
        a = std::move(b);
        b = std::move(c);
    }
    return n == 1 ? a : b;
}

/// Generating functions G_{k,l}(q) of partitions with exactly l distinct
/// parts and largest part exactly k, built from
///   G_{k,1} = q^k,   G_{k,l} = q^k * sum_{j<k} G_{j,l-1}.
/// The table keeps running prefix sums per l, so each entry costs one
/// shifted addition. Not synchronized: share one instance per thread.
class GklCache {
public:
    /// G_{k,l}; zero when the set is empty (l distinct positive parts need
    /// a largest part of at least l).
    const QPoly& get(int k, int l) {
        if (k < 1 || l < 1) throw std::invalid_argument("GklCache::get: k, l must be >= 1");
        ensure(k + l);
        if (l > static_cast<int>(polys_.size()) || k > static_cast<int>(polys_[l - 1].size()))
            return zero_;
        return polys_[static_cast<std::size_t>(l - 1)][static_cast<std::size_t>(k - 1)];
    }

    /// Extends the table to cover all pairs with k + l <= budget_s.
    void ensure(int budget_s) {
        int needed = budget_s - 1; // largest k at l = 1
        if (needed < 1) return;
        if (polys_.empty()) {
            polys_.emplace_back();
            prefix_.emplace_back();
        }
        // l = 1 row: G_{k,1} = q^k.
        for (int k = static_cast<int>(polys_[0].size()) + 1; k <= needed; ++k) {
            polys_[0].push_back(QPoly::monomial(k));
            QPoly sum = prefix_[0].empty() ? polys_[0].back()
                                           : prefix_[0].back() + polys_[0].back();
            prefix_[0].push_back(std::move(sum));
        }
        for (int l = 2; l <= budget_s - 1; ++l) {
            if (static_cast<int>(polys_.size()) < l) {
                polys_.emplace_back();
                prefix_.emplace_back();
            }
            auto& row = polys_[static_cast<std::size_t>(l - 1)];
            auto& pre = prefix_[static_cast<std::size_t>(l - 1)];
            const auto& below = prefix_[static_cast<std::size_t>(l - 2)];
            for (int k = static_cast<int>(row.size()) + 1; k <= budget_s - l; ++k) {
                QPoly g; // G_{k,l} = q^k * (G_{1,l-1} + ... + G_{k-1,l-1})
                if (k >= 2) g = below[static_cast<std::size_t>(k - 2)].shifted(k);
                row.push_back(std::move(g));
                QPoly sum = pre.empty() ? row.back() : pre.back() + row.back();
                pre.push_back(std::move(sum));
            }
        }
    }

private:
    // polys_[l-1][k-1] = G_{k,l}; prefix_[l-1][k-1] = sum_{j<=k} G_{j,l}.
    std::vector<std::vector<QPoly>> polys_;
    std::vector<std::vector<QPoly>> prefix_;
    QPoly zero_;
};

/// G_{k,l}(q) as a standalone call.
inline QPoly gf_distinct_parts(int k, int l) {
    GklCache cache;
    return cache.get(k, l);
}

/// G_s(q) as 1 + sum of G_{k,l} over k >= 1, l >= 1, k + l <= s.
inline QPoly size_gf_by_sum(int s, GklCache& cache) {
    detail::check_positive_s(s, "size_gf_by_sum");
    cache.ensure(s);
    QPoly total = QPoly::one();
    for (int l = 1; l <= s - 1; ++l)
        for (int k = 1; k + l <= s; ++k) total += cache.get(k, l);
    return total;
}

inline QPoly size_gf_by_sum(int s) {
    GklCache cache;
    return size_gf_by_sum(s, cache);
}

/// G_s(q) by the q-binomial closed form
///   G_s(q) = sum_{m=0..s} q^(m(m+1)/2) [s-m choose m]_q,
/// the sum truncating where m exceeds s - m.
inline QPoly size_gf_closed_form(int s, QBinomCache& cache) {
    detail::check_positive_s(s, "size_gf_closed_form");
    QPoly total;
    for (int m = 0; 2 * m <= s; ++m)
        total.add_shifted(cache.get(s - m, m), m * (m + 1) / 2);
    return total;
}

inline QPoly size_gf_closed_form(int s) {
    QBinomCache cache;
    return size_gf_closed_form(s, cache);
}

/// The bijection behind the closed form: add m, m-1, ..., 1 to the parts of
/// a partition lying in an m x (n-m) box (missing parts count as zero),
/// producing a partition with exactly m distinct positive parts. The size
/// grows by exactly m(m+1)/2. A negative box_width skips the width check.
inline Partition distinctify(const Partition& p, int m, int box_width = -1) {
    if (m < 1) throw std::invalid_argument("distinctify: m must be >= 1");
    if (p.num_parts() > m || (box_width >= 0 && p.largest() > box_width))
        throw std::invalid_argument("distinctify: partition does not fit the box");
    std::vector<int> parts(static_cast<std::size_t>(m), 0);
    for (int i = 0; i < p.num_parts(); ++i) parts[static_cast<std::size_t>(i)] = p.parts()[static_cast<std::size_t>(i)];
    for (int i = 0; i < m; ++i) parts[static_cast<std::size_t>(i)] += m - i;
    return Partition(std::move(parts));
}

enum class GfMethod { Sum, Closed, Recurrence, Brute };

inline const char* to_string(GfMethod m) {
    switch (m) {
        case GfMethod::Sum: return "sum";
        case GfMethod::Closed: return "closed";
        case GfMethod::Recurrence: return "recurrence";
        case GfMethod::Brute: return "brute";
    }
    return "?";
}

/// Table of G_s(q) for 1 <= s <= max_s, tagged with the method that built it.
struct GfTable {
    int max_s = 0;
    GfMethod method = GfMethod::Recurrence;
    std::vector<QPoly> polys; // index s; index 0 unused

    const QPoly& at(int s) const {
        if (s < 1 || s > max_s) throw std::invalid_argument("GfTable::at: s out of range");
        return polys[static_cast<std::size_t>(s)];
    }
};

namespace detail {

inline QPoly gs_base_case(int s) {
    switch (s) {
        case 1: return QPoly::from_coeffs({1});
        case 2: return QPoly::from_coeffs({1, 1});
        case 3: return QPoly::from_coeffs({1, 1, 1});
        case 4: return QPoly::from_coeffs({1, 1, 1, 2});
    }
    throw std::invalid_argument("gs_base_case: s out of range");
}

} // namespace detail

/// Streams G_s(q) for s = 1..max_s through `visit` using the recurrence
///   G_s = G_{s-1} + q^(s-1) G_{s-3} + q^(s-1) G_{s-4}   (s >= 5)
/// holding only a four-polynomial window. This is the fast path for large s.
inline void for_each_gs_recurrence(int max_s, const std::function<void(int, const QPoly&)>& visit) {
    detail::check_positive_s(max_s, "for_each_gs_recurrence");
    std::vector<QPoly> window; // last four polynomials, oldest first
    for (int s = 1; s <= max_s; ++s) {
        QPoly g;
        if (s <= 4) {
            g = detail::gs_base_case(s);
        } else {
            g = window[3]; // G_{s-1}
            g.add_shifted(window[1], s - 1);
            g.add_shifted(window[0], s - 1);
        }
        visit(s, g);
        if (static_cast<int>(window.size()) == 4) window.erase(window.begin());
        window.push_back(std::move(g));
    }
}

/// G_s(q) via the recurrence.
inline QPoly size_gf_by_recurrence(int s) {
    QPoly result;
    for_each_gs_recurrence(s, [&](int i, const QPoly& g) {
        if (i == s) result = g;
    });
    return result;
}

/// Full table via the recurrence (all polynomials retained).
inline GfTable gf_table_recurrence(int max_s) {
    GfTable table;
    table.max_s = max_s;
    table.method = GfMethod::Recurrence;
    table.polys.resize(static_cast<std::size_t>(max_s) + 1);
    for_each_gs_recurrence(max_s, [&](int s, const QPoly& g) {
        table.polys[static_cast<std::size_t>(s)] = g;
    });
    return table;
}

inline GfTable gf_table(int max_s, GfMethod method, std::uint64_t budget = kDefaultWorkBudget) {
    if (method == GfMethod::Recurrence) return gf_table_recurrence(max_s);
    GfTable table;
    table.max_s = max_s;
    table.method = method;
    table.polys.resize(static_cast<std::size_t>(max_s) + 1);
    GklCache gkl;
    QBinomCache qb;
    for (int s = 1; s <= max_s; ++s) {
        switch (method) {
            case GfMethod::Sum: table.polys[static_cast<std::size_t>(s)] = size_gf_by_sum(s, gkl); break;
            case GfMethod::Closed: table.polys[static_cast<std::size_t>(s)] = size_gf_closed_form(s, qb); break;
            case GfMethod::Brute: table.polys[static_cast<std::size_t>(s)] = size_gf_brute_force(s, BruteVariant::PerimeterFilter, budget); break;
            case GfMethod::Recurrence: break; // handled above
        }
    }
    return table;
}

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerificationReport {
    std::vector<CheckResult> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    const CheckResult* first_failure() const {
        for (const auto& c : checks)
            if (!c.pass) return &c;
        return nullptr;
    }
};

namespace detail {

inline std::string first_difference(const QPoly& a, const QPoly& b) {
    int top = std::max(a.degree(), b.degree());
    for (int n = 0; n <= top; ++n) {
        if (a.coeff(n) != b.coeff(n)) {
            std::ostringstream out;
            out << "first differing coefficient at q^" << n << ": " << a.coeff(n)
                << " vs " << b.coeff(n);
            return out.str();
        }
    }
    return "";
}

inline void add_agreement_check(VerificationReport& report, int s, const char* lhs_name,
                                const QPoly& lhs, const char* rhs_name, const QPoly& rhs) {
    CheckResult c;
    c.name = "s=" + std::to_string(s) + ": " + lhs_name + " = " + rhs_name;
    c.pass = lhs == rhs;
    if (!c.pass) c.detail = first_difference(lhs, rhs);
    report.checks.push_back(std::move(c));
}

} // namespace detail

/// Cross-checks every route to G_s(q): sum, closed form and recurrence agree
/// for s <= max_s; both brute-force variants agree for s <= brute_max; and
/// G_s(1) = F_{s+1} throughout.
inline VerificationReport verify_all_methods(int max_s, int brute_max,
                                             std::uint64_t budget = kDefaultWorkBudget) {
    detail::check_positive_s(max_s, "verify_all_methods");
    if (brute_max > max_s)
        throw std::invalid_argument("verify_all_methods: brute_max must be <= max_s");
    VerificationReport report;
    GklCache gkl;
    QBinomCache qb;
    Integer fib_s = 1, fib_s1 = 1; // F_s, F_{s+1} rolling
    for_each_gs_recurrence(max_s, [&](int s, const QPoly& rec) {
        QPoly sum = size_gf_by_sum(s, gkl);
        QPoly closed = size_gf_closed_form(s, qb);
        detail::add_agreement_check(report, s, "sum", sum, "closed", closed);
        detail::add_agreement_check(report, s, "closed", closed, "recurrence", rec);
        if (s <= brute_max) {
            QPoly brute = size_gf_brute_force(s, BruteVariant::PerimeterFilter, budget);
            QPoly hooks = size_gf_brute_force(s, BruteVariant::HookFilter, budget, brute.degree());
            detail::add_agreement_check(report, s, "recurrence", rec, "brute(perimeter)", brute);
            detail::add_agreement_check(report, s, "brute(perimeter)", brute, "brute(hook)", hooks);
        }
        if (s > 1) {
            Integer next = fib_s + fib_s1;
            fib_s = std::move(fib_s1);
            fib_s1 = std::move(next);
        }
        CheckResult count;
        count.name = "s=" + std::to_string(s) + ": G_s(1) = F_{s+1}";
        Integer value = rec.eval_one();
        count.pass = value == fib_s1;
        if (!count.pass) {
            std::ostringstream out;
            out << "G_s(1) = " << value << " but F_{s+1} = " << fib_s1;
            count.detail = out.str();
        }
        report.checks.push_back(std::move(count));
    });
    return report;
}

} // namespace core_moments
