#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "zelab/errors.hpp"
#include "zelab/matrix.hpp"
#include "zelab/rng.hpp"
#include "zelab/types.hpp"

namespace zelab::construct {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt out = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        out *= n - k + i;
        out /= i;
    }
    return out;
}

inline BigRat pow_rational(BigRat base, std::uint64_t e) {
    BigRat out = 1;
    while (e > 0) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}

// Probability that l+1 independent uniform symbols cover all of [q], by
// inclusion-exclusion: sum_i (-1)^i binom(q,i) ((q-i)/q)^{l+1}.  Zero when
// l+1 < q (fewer draws than symbols).
inline BigRat rainbow_probability_exact(std::uint32_t q, std::uint64_t ell) {
    if (q < 2) throw DomainError("rainbow_probability: q must be at least 2");
    if (ell + 1 < q) return 0;
    const std::uint64_t draws = ell + 1;
    BigInt numerator = 0;
    for (std::uint32_t i = 0; i <= q; ++i) {
        BigInt term = binomial(q, i) * boost::multiprecision::pow(BigInt(q - i), draws);
        if (i % 2 == 0)
            numerator += term;
        else
            numerator -= term;
    }
    return BigRat(numerator, boost::multiprecision::pow(BigInt(q), draws));
}

inline double rainbow_probability(std::uint32_t q, std::uint64_t ell) {
    return static_cast<double>(rainbow_probability_exact(q, ell));
}

// Smallest n with binom(m, l+1) * (1 - p_rainbow)^n <= target_failure.
// The comparison runs in exact rational arithmetic: (1-p)^n underflows
// doubles long before the search range is exhausted.
inline std::uint64_t required_columns(std::uint64_t m, std::uint32_t q, std::uint64_t ell,
                                      double target_failure) {
    if (!(target_failure > 0 && target_failure < 1))
        throw DomainError("required_columns: target_failure must lie in (0, 1)");
    const BigRat p = rainbow_probability_exact(q, ell);
    if (p == 0)
        throw DomainError("required_columns: rainbow probability is zero (need l+1 >= q)");
    const BigInt subsets = binomial(m, ell + 1);
    if (subsets == 0) return 1; // no (l+1)-subsets: any single column suffices
    const BigRat miss = BigRat(1) - p;
    const BigRat budget = BigRat(target_failure) / BigRat(subsets); // need miss^n <= budget

    auto ok = [&](std::uint64_t n) { return pow_rational(miss, n) <= budget; };

    std::uint64_t hi = 1;
    while (!ok(hi)) {
        hi *= 2;
        if (hi > (1ull << 40)) throw DomainError("required_columns: search range exhausted");
    }
    std::uint64_t lo = hi / 2; // 0 or a failing n
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (mid == 0 || !ok(mid))
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

// Uniform random entries, row-major, from the seed's construction stream.
inline CodeMatrix random_code(std::uint32_t m, std::uint32_t n, std::uint32_t q,
                              std::uint64_t seed) {
    CodeMatrix C(m, n, q);
    Rng rng(derive_seed(seed, {stream::construct}));
    for (row_t r = 1; r <= m; ++r)
        for (col_t c = 1; c <= n; ++c)
            C.set(r, c, static_cast<symbol_t>(1 + rng.below(q)));
    return C;
}

// ---------------------------------------------------------------------------
// Exact minimum length by exhaustive search with symmetry reduction.
//
// Canonical form: row 1 is all-ones and rows are lexicographically
// nondecreasing.  Every matrix is equivalent to one of this form under
// per-column symbol permutations (send any one row's entries to 1) followed
// by a row sort, and both operations preserve column-image sizes, hence the
// list-decoding property.  The search grows matrices row by row, rejecting a
// row as soon as it completes a confusable (l+1)-subset; adding rows never
// repairs one, so the pruning is sound.
// ---------------------------------------------------------------------------

enum class MinNStatus { found, unknown, infeasible };

inline const char* to_string(MinNStatus s) {
    switch (s) {
        case MinNStatus::found: return "found";
        case MinNStatus::unknown: return "unknown";
        default: return "infeasible";
    }
}

struct MinNResult {
    MinNStatus status;
    std::uint32_t n = 0;                 // valid iff status == found
    std::optional<CodeMatrix> example;   // a witness code at the minimum n
    std::uint64_t nodes = 0;             // row candidates tried, all lengths
};

namespace detail {

enum class SearchOutcome { exists, none, budget };

// Does an l-list-decoding m x n matrix over [q] exist?  Budget counts row
// candidates tried; on exhaustion the answer is indeterminate.
inline SearchOutcome exists_code(std::uint32_t m, std::uint32_t n, std::uint32_t q,
                                 std::uint32_t ell, std::uint64_t budget,
                                 std::uint64_t& nodes_used,
                                 std::optional<CodeMatrix>& found) {
    const std::uint32_t t = ell + 1;
    std::uint64_t codes = 1; // q^n, saturated
    for (std::uint32_t j = 0; j < n; ++j) {
        codes *= q;
        if (codes > (1ull << 40)) throw DomainError("exists_code: q^n out of range");
    }

    // rows[i] holds row i+1 as its radix-q code (first column most
    // significant, so numeric order on codes is lexicographic row order).
    std::vector<std::uint64_t> row_code(m, 0);
    std::vector<std::vector<symbol_t>> row_sym(m, std::vector<symbol_t>(n, 1));
    nodes_used = 0;

    auto decode = [&](std::uint64_t code, std::vector<symbol_t>& out) {
        for (std::uint32_t j = n; j >= 1; --j) {
            out[j - 1] = static_cast<symbol_t>(code % q + 1);
            code /= q;
        }
    };

    // Confusability of subsets that include the newest row i (0-based):
    // choose l companions among rows 0..i-1.
    auto new_row_ok = [&](std::uint32_t i) {
        if (i + 1 < t) return true;
        std::vector<std::uint32_t> pick(ell);
        for (std::uint32_t j = 0; j < ell; ++j) pick[j] = j;
        while (true) {
            bool rainbow = false;
            for (std::uint32_t h = 0; h < n && !rainbow; ++h) {
                SymbolSet img(q);
                img.insert(row_sym[i][h]);
                for (std::uint32_t j = 0; j < ell; ++j) img.insert(row_sym[pick[j]][h]);
                rainbow = img.covers_alphabet();
            }
            if (!rainbow) return false; // confusable subset found
            // next l-combination of {0..i-1}
            std::uint32_t j = ell;
            while (j > 0 && pick[j - 1] == i - (ell - (j - 1))) --j;
            if (j == 0) break;
            ++pick[j - 1];
            for (std::uint32_t l2 = j; l2 < ell; ++l2) pick[l2] = pick[l2 - 1] + 1;
        }
        return true;
    };

    auto dfs = [&](auto&& self, std::uint32_t i) -> SearchOutcome {
        if (i == m) {
            CodeMatrix C(m, n, q);
            for (row_t r = 1; r <= m; ++r)
                for (col_t c = 1; c <= n; ++c) C.set(r, c, row_sym[r - 1][c - 1]);
            found = C;
            return SearchOutcome::exists;
        }
        for (std::uint64_t code = row_code[i - 1]; code < codes; ++code) {
            if (++nodes_used > budget) return SearchOutcome::budget;
            row_code[i] = code;
            decode(code, row_sym[i]);
            if (!new_row_ok(i)) continue;
            const SearchOutcome sub = self(self, i + 1);
            if (sub != SearchOutcome::none) return sub;
        }
        return SearchOutcome::none;
    };

    // Row 1 fixed to all-ones (code 0).
    row_code[0] = 0;
    decode(0, row_sym[0]);
    if (m == 1) {
        CodeMatrix C(1, n, q);
        found = C;
        return SearchOutcome::exists;
    }
    return dfs(dfs, 1);
}

} // namespace detail

// Exact n(m,q,l) for tiny parameters.  Never returns a wrong number: budget
// exhaustion at any length yields `unknown`.  Infeasible when m > l yet
// l+1 < q (some subset exists but can never see all q symbols).
inline MinNResult search_min_n(std::uint32_t m, std::uint32_t q, std::uint32_t ell,
                               std::uint64_t budget) {
    if (m < 1) throw DomainError("search_min_n: m must be at least 1");
    if (ell < 1) throw DomainError("search_min_n: list size must be at least 1");
    Alphabet{q};

    MinNResult res{MinNStatus::unknown, 0, std::nullopt, 0};
    if (m > ell && ell + 1 < q) {
        res.status = MinNStatus::infeasible;
        return res;
    }

    for (std::uint32_t n = 1;; ++n) {
        std::uint64_t used = 0;
        std::optional<CodeMatrix> example;
        const auto out =
            detail::exists_code(m, n, q, ell, budget - res.nodes, used, example);
        res.nodes += used;
        if (out == detail::SearchOutcome::exists) {
            res.status = MinNStatus::found;
            res.n = n;
            res.example = std::move(example);
            return res;
        }
        if (out == detail::SearchOutcome::budget) {
            res.status = MinNStatus::unknown;
            return res;
        }
    }
}

} // namespace zelab::construct
