#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "zelab/errors.hpp"
#include "zelab/matrix.hpp"
#include "zelab/types.hpp"

namespace zelab::verifier {

// Reading of "l-list-decoding" used throughout: for every possible channel
// output word in [q]^n, at most l *codewords* (rows of C) are compatible with
// it.  The alternative reading that counts compatible words over all of
// [q]^n, not just the code, is never satisfiable for n >= 1 — every output
// word has (q-1)^n compatible q-ary words — so it is deliberately not
// implemented.

struct Verdict {
    bool is_code;
    std::optional<RowSubset> witness; // confusable (l+1)-subset, present iff !is_code
};

// A channel output: one symbol per coordinate.  Compatible with input sigma
// iff it differs from sigma at every coordinate.
struct OutputWord {
    std::vector<symbol_t> symbols;
};

// True iff some column restricted to R shows all q symbols.
inline bool has_rainbow_column(const CodeMatrix& C, const RowSubset& R) {
    const std::uint32_t q = C.alphabet_size();
    if (R.size() < q) return false;
    for (col_t h = 1; h <= C.cols(); ++h) {
        SymbolSet img(q);
        for (row_t r : R) {
            img.insert(C.at(r, h));
            if (img.covers_alphabet()) break;
        }
        if (img.covers_alphabet()) return true;
    }
    return false;
}

// Decides whether every (l+1)-subset of rows has a rainbow column.  Subsets
// are explored depth-first in lexicographic order; a branch dies as soon as
// one column's prefix image covers the alphabet, and when no column can
// cover the alphabet even with every remaining row, the lexicographically
// smallest completion is an immediate witness.  The first witness reached
// this way is the lexicographically first confusable subset.
inline Verdict is_list_decoding(const CodeMatrix& C, std::uint32_t ell) {
    const std::uint32_t m = C.rows(), n = C.cols(), q = C.alphabet_size();
    if (ell < 1 || ell > m - 1) throw DomainError("is_list_decoding: list size out of range");
    const std::uint32_t t = ell + 1;

    if (t < q) {
        // |image| <= t < q in every column: the first t rows are confusable.
        return Verdict{false, RowSubset::range(1, t)};
    }

    // suffix[h-1][r-1] = image of rows r..m in column h; index m is empty.
    std::vector<std::vector<SymbolSet>> suffix(n);
    for (col_t h = 1; h <= n; ++h) {
        auto& col = suffix[h - 1];
        col.assign(m + 1, SymbolSet(q));
        for (row_t r = m; r >= 1; --r) {
            col[r - 1] = col[r];
            col[r - 1].insert(C.at(r, h));
        }
    }

    // images[d][h-1] = image of the first d chosen rows in column h.
    std::vector<std::vector<SymbolSet>> images(t + 1, std::vector<SymbolSet>(n, SymbolSet(q)));
    std::vector<row_t> chosen(t);
    std::optional<RowSubset> witness;

    auto dfs = [&](auto&& self, std::uint32_t depth, row_t next) -> bool {
        // No column full on the chosen prefix here, by construction.
        const std::uint32_t need = t - depth;
        if (m - next + 1 < need) return false;

        bool any_alive = false;
        for (col_t h = 1; h <= n; ++h) {
            SymbolSet reach = images[depth][h - 1];
            reach.unite(suffix[h - 1][next - 1]);
            if (reach.covers_alphabet()) {
                any_alive = true;
                break;
            }
        }
        if (!any_alive) {
            // Nothing can become rainbow: the smallest completion is a witness.
            std::vector<row_t> rows(chosen.begin(), chosen.begin() + depth);
            for (std::uint32_t i = 0; i < need; ++i) rows.push_back(next + i);
            witness = RowSubset::of(std::move(rows));
            return true;
        }

        for (row_t r = next; r <= m - need + 1; ++r) {
            bool full = false;
            for (col_t h = 1; h <= n; ++h) {
                SymbolSet img = images[depth][h - 1];
                img.insert(C.at(r, h));
                if (img.covers_alphabet()) {
                    full = true;
                    break;
                }
                images[depth + 1][h - 1] = img;
            }
            if (full) continue; // this row completes a rainbow; siblings may not
            chosen[depth] = r;
            if (depth + 1 == t) {
                witness = RowSubset::of(std::vector<row_t>(chosen.begin(), chosen.end()));
                return true;
            }
            if (self(self, depth + 1, r + 1)) return true;
        }
        return false;
    };

    if (dfs(dfs, 0, 1)) return Verdict{false, std::move(witness)};
    return Verdict{true, std::nullopt};
}

// Brute-force cross-check: enumerates every output word in [q]^n and counts
// codewords compatible with it.  Guarded to q^n <= 10^7.
inline Verdict confusable_by_output(const CodeMatrix& C, std::uint32_t ell) {
    const std::uint32_t m = C.rows(), n = C.cols(), q = C.alphabet_size();
    if (ell < 1 || ell > m - 1) throw DomainError("confusable_by_output: list size out of range");
    constexpr double kGuard = 1e7;
    if (n * std::log(static_cast<double>(q)) > std::log(kGuard) + 1e-9)
        throw DomainError("confusable_by_output: instance too large (q^n exceeds 10^7); "
                          "use is_list_decoding");

    const std::uint32_t t = ell + 1;
    const std::size_t words = (m + 63) / 64;
    // compat_mask[h-1][s-1] = row bitmask {r : C[r][h] != s}.
    std::vector<std::vector<std::vector<std::uint64_t>>> compat_mask(
        n, std::vector<std::vector<std::uint64_t>>(q, std::vector<std::uint64_t>(words, 0)));
    for (col_t h = 1; h <= n; ++h)
        for (symbol_t s = 1; s <= q; ++s) {
            auto& mask = compat_mask[h - 1][s - 1];
            for (row_t r = 1; r <= m; ++r)
                if (C.at(r, h) != s) mask[(r - 1) / 64] |= 1ull << ((r - 1) % 64);
        }

    // prefix[j] = AND of compat_mask over the first j coordinates of sigma'.
    std::vector<std::vector<std::uint64_t>> prefix(n + 1,
                                                   std::vector<std::uint64_t>(words, ~0ull));
    if (m % 64 != 0) prefix[0][words - 1] = (1ull << (m % 64)) - 1;

    std::vector<symbol_t> sigma(n, 1);
    auto recompute_from = [&](std::uint32_t j0) {
        for (std::uint32_t j = j0; j <= n; ++j) {
            const auto& mask = compat_mask[j - 1][sigma[j - 1] - 1];
            for (std::size_t w = 0; w < words; ++w) prefix[j][w] = prefix[j - 1][w] & mask[w];
        }
    };

    recompute_from(1);
    while (true) {
        std::uint32_t compatible = 0;
        for (std::size_t w = 0; w < words; ++w)
            compatible += static_cast<std::uint32_t>(std::popcount(prefix[n][w]));
        if (compatible >= t) {
            std::vector<row_t> rows;
            rows.reserve(t);
            for (row_t r = 1; r <= m && rows.size() < t; ++r)
                if (prefix[n][(r - 1) / 64] & (1ull << ((r - 1) % 64))) rows.push_back(r);
            return Verdict{false, RowSubset::of(std::move(rows))};
        }
        // Odometer step, last coordinate fastest (lexicographic word order).
        std::uint32_t j = n;
        while (j >= 1 && sigma[j - 1] == q) {
            sigma[j - 1] = 1;
            --j;
        }
        if (j == 0) break;
        ++sigma[j - 1];
        recompute_from(j);
    }
    return Verdict{true, std::nullopt};
}

// The channel adversary's word for a row set: at each coordinate, the
// smallest symbol the rows of R omit.  None iff some coordinate is rainbow.
// Always succeeds when |R| <= q-1.
inline std::optional<OutputWord> adversarial_output(const CodeMatrix& C, const RowSubset& R) {
    if (R.empty()) throw DomainError("adversarial_output: empty row set");
    const std::uint32_t q = C.alphabet_size();
    OutputWord out;
    out.symbols.reserve(C.cols());
    for (col_t h = 1; h <= C.cols(); ++h) {
        const SymbolSet img = column_image(C, h, R);
        if (img.covers_alphabet()) return std::nullopt;
        for (symbol_t s = 1; s <= q; ++s)
            if (!img.contains(s)) {
                out.symbols.push_back(s);
                break;
            }
    }
    return out;
}

// (1/n) * log2(m/l).
inline double rate(std::uint64_t m, std::uint64_t n, std::uint64_t ell) {
    if (ell < 1) throw DomainError("rate: list size must be at least 1");
    if (m <= ell) throw DomainError("rate: m must exceed the list size");
    if (n < 1) throw DomainError("rate: n must be at least 1");
    return std::log2(static_cast<double>(m) / static_cast<double>(ell)) / static_cast<double>(n);
}

} // namespace zelab::verifier
