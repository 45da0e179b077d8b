#pragma once

#include "core_moments/numeric.hpp"
#include "core_moments/qpoly.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace core_moments {

/// Thrown when a brute-force enumeration would visit more partitions than
/// the caller's work budget allows.
class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Default brute-force work budget: number of partitions examined.
inline constexpr std::uint64_t kDefaultWorkBudget = 10'000'000;

/// An integer partition: weakly decreasing sequence of positive parts,
/// possibly empty. Immutable after construction.
class Partition {
public:
    Partition() = default;

    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] < 1) throw std::invalid_argument("Partition: parts must be positive");
            if (i + 1 < parts_.size() && parts_[i] < parts_[i + 1])
                throw std::invalid_argument("Partition: parts must be weakly decreasing");
        }
    }

    const std::vector<int>& parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }
    int num_parts() const { return static_cast<int>(parts_.size()); }
    int largest() const { return parts_.empty() ? 0 : parts_.front(); }

    long long size() const {
        long long total = 0;
        for (int p : parts_) total += p;
        return total;
    }

    friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }
    friend bool operator<(const Partition& a, const Partition& b) { return a.parts_ < b.parts_; }

    std::string to_string() const {
        std::string out = "(";
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i > 0) out += ",";
            out += std::to_string(parts_[i]);
        }
        return out + ")";
    }

private:
    std::vector<int> parts_;
};

/// Hook lengths of every box of the Young diagram, in row-major order.
/// The hook of box (i, j) is arm + leg + 1: boxes to the right, boxes
/// below, plus the box itself (English convention).
inline std::vector<int> hook_lengths(const Partition& p) {
    const auto& parts = p.parts();
    std::vector<int> hooks;
    hooks.reserve(static_cast<std::size_t>(p.size()));
    int m = p.num_parts();
    for (int i = 0; i < m; ++i) {
        for (int j = 1; j <= parts[static_cast<std::size_t>(i)]; ++j) {
            int arm = parts[static_cast<std::size_t>(i)] - j;
            int leg = 0;
            for (int r = i + 1; r < m && parts[static_cast<std::size_t>(r)] >= j; ++r) ++leg;
            hooks.push_back(arm + leg + 1);
        }
    }
    return hooks;
}

/// Largest hook length; 0 for the empty partition.
inline int perimeter(const Partition& p) {
    if (p.empty()) return 0;
    auto hooks = hook_lengths(p);
    return *std::max_element(hooks.begin(), hooks.end());
}

/// True iff the Young diagram avoids hook length t.
inline bool is_core(const Partition& p, int t) {
    if (t < 1) throw std::invalid_argument("is_core: t must be positive");
    for (int h : hook_lengths(p))
        if (h == t) return false;
    return true;
}

inline bool has_distinct_parts(const Partition& p) {
    const auto& parts = p.parts();
    for (std::size_t i = 0; i + 1 < parts.size(); ++i)
        if (parts[i] == parts[i + 1]) return false;
    return true;
}

namespace detail {

inline void check_positive_s(int s, const char* where) {
    if (s < 1) throw std::invalid_argument(std::string(where) + ": s must be >= 1");
}

} // namespace detail

/// All (s,s+1)-core partitions with distinct parts, characterized as the
/// distinct-part partitions with perimeter < s. For a nonempty candidate with
/// largest part a and m parts the perimeter is a + m - 1, so the search tree
/// is pruned at a + m - 1 >= s. Output is in ascending lexicographic order of
/// the (descending) part sequences, empty partition first.
inline std::vector<Partition> enumerate_core_partitions(int s,
                                                        std::uint64_t budget = kDefaultWorkBudget) {
    detail::check_positive_s(s, "enumerate_core_partitions");
    std::vector<Partition> out;
    std::uint64_t examined = 0;
    std::vector<int> parts; // current candidate, strictly decreasing

    auto emit = [&]() {
        if (++examined > budget)
            throw BudgetExceeded("enumerate_core_partitions: work budget exceeded at s = " +
                                 std::to_string(s));
        out.emplace_back(Partition(parts));
    };

    emit(); // the empty partition belongs to every P_s

    // Preorder DFS, children in ascending next-part order, gives ascending
    // lexicographic output over the descending part sequences.
    std::function<void()> dfs = [&]() {
        emit();
        // With largest part a and m parts the perimeter is a + m - 1; one more
        // part is admissible only if a + m < s.
        if (parts.front() + static_cast<int>(parts.size()) >= s) return;
        for (int next = 1; next < parts.back(); ++next) {
            parts.push_back(next);
            dfs();
            parts.pop_back();
        }
    };

    for (int a = 1; a <= s - 1; ++a) {
        parts.assign(1, a);
        dfs();
    }
    return out;
}

/// All partitions with distinct parts and size <= max_size, empty partition
/// included, in no particular order.
inline std::vector<Partition> enumerate_distinct_partitions(int max_size,
                                                            std::uint64_t budget = kDefaultWorkBudget) {
    if (max_size < 0) throw std::invalid_argument("enumerate_distinct_partitions: negative size");
    std::vector<Partition> out;
    std::uint64_t examined = 0;
    std::vector<int> parts;
    std::function<void(int, int)> dfs = [&](int remaining, int max_part) {
        if (++examined > budget)
            throw BudgetExceeded("enumerate_distinct_partitions: work budget exceeded");
        out.emplace_back(Partition(parts));
        for (int next = std::min(remaining, max_part); next >= 1; --next) {
            parts.push_back(next);
            dfs(remaining - next, next - 1);
            parts.pop_back();
        }
    };
    dfs(max_size, max_size);
    return out;
}

enum class BruteVariant {
    PerimeterFilter, // enumerate perimeter < s directly (pruned search)
    HookFilter,      // enumerate distinct-part partitions by size, filter on hook lengths
};

/// Size generating function of the (s,s+1)-core partitions with distinct
/// parts, by explicit enumeration. The perimeter variant enumerates exactly
/// the members; the hook variant independently enumerates every distinct-part
/// partition of size <= max_size and keeps those avoiding hooks s and s+1.
inline QPoly size_gf_brute_force(int s,
                                 BruteVariant variant = BruteVariant::PerimeterFilter,
                                 std::uint64_t budget = kDefaultWorkBudget,
                                 int hook_filter_max_size = -1) {
    detail::check_positive_s(s, "size_gf_brute_force");
    std::vector<Integer> coeffs;
    auto tally = [&](long long size) {
        if (size >= static_cast<long long>(coeffs.size()))
            coeffs.resize(static_cast<std::size_t>(size) + 1, Integer(0));
        coeffs[static_cast<std::size_t>(size)] += 1;
    };

    if (variant == BruteVariant::PerimeterFilter) {
        for (const Partition& p : enumerate_core_partitions(s, budget)) tally(p.size());
    } else {
        int max_size = hook_filter_max_size;
        if (max_size < 0) {
            // Bound the search by the largest size the perimeter route attains.
            max_size = size_gf_brute_force(s, BruteVariant::PerimeterFilter, budget).degree();
            if (max_size < 0) max_size = 0;
        }
        for (const Partition& p : enumerate_distinct_partitions(max_size, budget)) {
            if (is_core(p, s) && is_core(p, s + 1)) tally(p.size());
        }
    }
    return QPoly::from_coeffs(std::move(coeffs));
}

} // namespace core_moments
