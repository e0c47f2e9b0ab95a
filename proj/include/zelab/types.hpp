#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "zelab/errors.hpp"
#include "zelab/rng.hpp"

namespace zelab {

using symbol_t = std::uint32_t; // channel symbol, 1-based: 1..q
using row_t = std::uint32_t;    // codeword index, 1-based: 1..m
using col_t = std::uint32_t;    // coordinate index, 1-based: 1..n

// Channel alphabet [q] = {1, ..., q}.
struct Alphabet {
    std::uint32_t q;

    explicit Alphabet(std::uint32_t q_) : q(q_) {
        if (q < 2) throw DomainError("Alphabet: q must be at least 2");
    }
};

// Subset of [q].  One 64-bit word inline; extra words only when q > 64, so
// the common case never allocates.
class SymbolSet {
public:
    explicit SymbolSet(std::uint32_t q) : q_(q) {
        if (q == 0) throw DomainError("SymbolSet: q must be positive");
        if (q > 64) tail_.resize((q - 1) / 64, 0);
    }

    static SymbolSet full(std::uint32_t q) {
        SymbolSet s(q);
        s.head_ = mask_for(std::min<std::uint32_t>(q, 64));
        for (std::size_t w = 0; w < s.tail_.size(); ++w) {
            const std::uint32_t lo = 64 * static_cast<std::uint32_t>(w + 1);
            s.tail_[w] = mask_for(std::min<std::uint32_t>(q - lo, 64));
        }
        return s;
    }

    // Symbols 1..min(q,64) from the low bits of `bits` (bit i-1 <-> symbol i).
    static SymbolSet from_mask(std::uint32_t q, std::uint64_t bits) {
        SymbolSet s(q);
        s.head_ = bits & mask_for(std::min<std::uint32_t>(q, 64));
        return s;
    }

    std::uint32_t alphabet_size() const noexcept { return q_; }

    void insert(symbol_t s) {
        check(s);
        word(s) |= bit(s);
    }

    void erase(symbol_t s) {
        check(s);
        word(s) &= ~bit(s);
    }

    bool contains(symbol_t s) const {
        check(s);
        return (word(s) & bit(s)) != 0;
    }

    std::uint32_t size() const noexcept {
        auto n = static_cast<std::uint32_t>(std::popcount(head_));
        for (std::uint64_t w : tail_) n += static_cast<std::uint32_t>(std::popcount(w));
        return n;
    }

    bool empty() const noexcept { return size() == 0; }
    bool covers_alphabet() const noexcept { return size() == q_; }

    void unite(const SymbolSet& o) {
        require_same(o);
        head_ |= o.head_;
        for (std::size_t w = 0; w < tail_.size(); ++w) tail_[w] |= o.tail_[w];
    }

    std::uint32_t intersect_count(const SymbolSet& o) const {
        require_same(o);
        auto n = static_cast<std::uint32_t>(std::popcount(head_ & o.head_));
        for (std::size_t w = 0; w < tail_.size(); ++w)
            n += static_cast<std::uint32_t>(std::popcount(tail_[w] & o.tail_[w]));
        return n;
    }

    std::vector<symbol_t> to_vector() const {
        std::vector<symbol_t> out;
        out.reserve(size());
        for (symbol_t s = 1; s <= q_; ++s)
            if (contains(s)) out.push_back(s);
        return out;
    }

    friend bool operator==(const SymbolSet& a, const SymbolSet& b) {
        return a.q_ == b.q_ && a.head_ == b.head_ && a.tail_ == b.tail_;
    }

private:
    static std::uint64_t mask_for(std::uint32_t nbits) noexcept {
        return nbits >= 64 ? ~0ull : (1ull << nbits) - 1;
    }

    void check(symbol_t s) const {
        if (s < 1 || s > q_) throw DomainError("SymbolSet: symbol out of range");
    }

    void require_same(const SymbolSet& o) const {
        if (q_ != o.q_) throw DomainError("SymbolSet: alphabet size mismatch");
    }

    std::uint64_t& word(symbol_t s) noexcept { return s <= 64 ? head_ : tail_[(s - 1) / 64 - 1]; }
    std::uint64_t word(symbol_t s) const noexcept { return s <= 64 ? head_ : tail_[(s - 1) / 64 - 1]; }
    static std::uint64_t bit(symbol_t s) noexcept { return 1ull << ((s - 1) % 64); }

    std::uint32_t q_;
    std::uint64_t head_ = 0;
    std::vector<std::uint64_t> tail_;
};

// A {0,1}-valued test function on [q], stored as its support.
class WeightFunction {
public:
    // Placeholder state (all-zeros over a one-symbol alphabet); reassign before use.
    WeightFunction() : support_(SymbolSet(1)) {}

    explicit WeightFunction(SymbolSet support) : support_(std::move(support)) {}

    static WeightFunction all_zeros(std::uint32_t q) { return WeightFunction(SymbolSet(q)); }
    static WeightFunction all_ones(std::uint32_t q) { return WeightFunction(SymbolSet::full(q)); }

    // Low bits of `bits` select the support (bit i-1 <-> symbol i); q <= 64.
    static WeightFunction from_mask(std::uint32_t q, std::uint64_t bits) {
        if (q > 64) throw DomainError("WeightFunction::from_mask: q must be at most 64");
        return WeightFunction(SymbolSet::from_mask(q, bits));
    }

    static WeightFunction random(std::uint32_t q, Rng& rng) {
        SymbolSet s(q);
        for (symbol_t v = 1; v <= q; ++v)
            if (rng.next() & 1) s.insert(v);
        return WeightFunction(std::move(s));
    }

    std::uint32_t alphabet_size() const noexcept { return support_.alphabet_size(); }
    bool value(symbol_t s) const { return support_.contains(s); }
    std::uint32_t support_size() const noexcept { return support_.size(); }
    const SymbolSet& support() const noexcept { return support_; }

    // wt(A) = sum over a in A of wt(a).
    std::uint32_t weight_of(const SymbolSet& set) const { return support_.intersect_count(set); }

private:
    SymbolSet support_;
};

// Sorted duplicate-free set of 1-based row indices.
class RowSubset {
public:
    RowSubset() = default;

    static RowSubset of(std::vector<row_t> rows) {
        std::sort(rows.begin(), rows.end());
        rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
        if (!rows.empty() && rows.front() == 0)
            throw DomainError("RowSubset: row indices are 1-based");
        RowSubset s;
        s.rows_ = std::move(rows);
        return s;
    }

    static RowSubset range(row_t lo, row_t hi) {
        if (lo == 0) throw DomainError("RowSubset: row indices are 1-based");
        RowSubset s;
        if (lo <= hi) {
            s.rows_.resize(hi - lo + 1);
            for (row_t r = lo; r <= hi; ++r) s.rows_[r - lo] = r;
        }
        return s;
    }

    bool contains(row_t r) const {
        return std::binary_search(rows_.begin(), rows_.end(), r);
    }

    // Inserts r, keeping order; returns false if already present.
    bool insert(row_t r) {
        if (r == 0) throw DomainError("RowSubset: row indices are 1-based");
        auto it = std::lower_bound(rows_.begin(), rows_.end(), r);
        if (it != rows_.end() && *it == r) return false;
        rows_.insert(it, r);
        return true;
    }

    std::size_t size() const noexcept { return rows_.size(); }
    bool empty() const noexcept { return rows_.empty(); }
    row_t operator[](std::size_t i) const { return rows_[i]; }

    auto begin() const noexcept { return rows_.begin(); }
    auto end() const noexcept { return rows_.end(); }

    const std::vector<row_t>& indices() const noexcept { return rows_; }

    friend bool operator==(const RowSubset& a, const RowSubset& b) { return a.rows_ == b.rows_; }
    friend bool operator<(const RowSubset& a, const RowSubset& b) { return a.rows_ < b.rows_; }

private:
    std::vector<row_t> rows_;
};

// A list of candidate row subsets maintained by the adversary.
struct Ensemble {
    std::vector<RowSubset> sets;

    std::size_t list_length() const noexcept { return sets.size(); }
};

} // namespace zelab
