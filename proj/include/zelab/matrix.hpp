#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "zelab/errors.hpp"
#include "zelab/types.hpp"

namespace zelab {

// m x n matrix over [q].  Rows are codewords, columns are hash functions.
// Row/column/symbol indices are all 1-based.
class CodeMatrix {
public:
    CodeMatrix(std::uint32_t m, std::uint32_t n, std::uint32_t q)
        : m_(m), n_(n), q_(q), cells_(static_cast<std::size_t>(m) * n, 1) {
        if (m < 1) throw DomainError("CodeMatrix: m must be at least 1");
        if (n < 1) throw DomainError("CodeMatrix: n must be at least 1");
        Alphabet{q}; // validates q >= 2
    }

    std::uint32_t rows() const noexcept { return m_; }
    std::uint32_t cols() const noexcept { return n_; }
    std::uint32_t alphabet_size() const noexcept { return q_; }

    symbol_t at(row_t r, col_t c) const {
        check_index(r, c);
        return cells_[idx(r, c)];
    }

    void set(row_t r, col_t c, symbol_t v) {
        check_index(r, c);
        if (v < 1 || v > q_) throw DomainError("CodeMatrix: symbol out of range");
        cells_[idx(r, c)] = v;
    }

    // Unchecked row-major access for hot loops (0-based offsets).
    symbol_t raw(std::size_t r0, std::size_t c0) const noexcept { return cells_[r0 * n_ + c0]; }

    friend bool operator==(const CodeMatrix& a, const CodeMatrix& b) {
        return a.m_ == b.m_ && a.n_ == b.n_ && a.q_ == b.q_ && a.cells_ == b.cells_;
    }

private:
    std::size_t idx(row_t r, col_t c) const noexcept {
        return static_cast<std::size_t>(r - 1) * n_ + (c - 1);
    }

    void check_index(row_t r, col_t c) const {
        if (r < 1 || r > m_) throw DomainError("CodeMatrix: row index out of range");
        if (c < 1 || c > n_) throw DomainError("CodeMatrix: column index out of range");
    }

    std::uint32_t m_, n_, q_;
    std::vector<symbol_t> cells_;
};

namespace detail {

inline bool blank_or_comment(const std::string& line) {
    for (char ch : line) {
        if (ch == '#') return true;
        if (ch != ' ' && ch != '\t' && ch != '\r') return false;
    }
    return true; // all whitespace
}

// Reads the next content line; returns false at EOF.  `lineno` tracks the
// 1-based physical line for error messages.
inline bool next_content_line(std::istream& in, std::string& line, int& lineno) {
    while (std::getline(in, line)) {
        ++lineno;
        if (!blank_or_comment(line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            return true;
        }
    }
    return false;
}

inline std::vector<long long> parse_ints(const std::string& line, int lineno) {
    std::istringstream ss(line);
    std::vector<long long> out;
    long long v;
    while (ss >> v) out.push_back(v);
    bool junk = ss.fail() && !ss.eof();
    if (!junk) {
        ss.clear();
        std::string rest;
        junk = static_cast<bool>(ss >> rest);
    }
    if (junk) throw ParseError("expected whitespace-separated integers", lineno);
    return out;
}

} // namespace detail

// Text format: header line `m n q`, then m lines of n space-separated
// entries in 1..q.  Lines starting with `#` (and blank lines) are skipped.
inline CodeMatrix load_matrix(std::istream& in) {
    std::string line;
    int lineno = 0;

    if (!detail::next_content_line(in, line, lineno))
        throw ParseError("missing header line `m n q`");
    auto header = detail::parse_ints(line, lineno);
    if (header.size() != 3)
        throw ParseError("header must be exactly `m n q`", lineno);
    const long long m = header[0], n = header[1], q = header[2];
    if (m < 1 || n < 1) throw ParseError("m and n must be positive", lineno);
    if (q < 2) throw ParseError("q must be at least 2", lineno);

    CodeMatrix C(static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(n),
                 static_cast<std::uint32_t>(q));
    for (long long r = 1; r <= m; ++r) {
        if (!detail::next_content_line(in, line, lineno))
            throw ParseError("expected " + std::to_string(m) + " rows, got " +
                             std::to_string(r - 1));
        auto vals = detail::parse_ints(line, lineno);
        if (static_cast<long long>(vals.size()) != n)
            throw ParseError("row " + std::to_string(r) + " has " +
                                 std::to_string(vals.size()) + " entries, expected " +
                                 std::to_string(n),
                             lineno);
        for (long long c = 1; c <= n; ++c) {
            const long long v = vals[c - 1];
            if (v < 1 || v > q)
                throw ParseError("entry out of range at row " + std::to_string(r) +
                                     ", col " + std::to_string(c) + ": value " +
                                     std::to_string(v) + " not in 1.." + std::to_string(q),
                                 lineno);
            C.set(static_cast<row_t>(r), static_cast<col_t>(c), static_cast<symbol_t>(v));
        }
    }
    if (detail::next_content_line(in, line, lineno))
        throw ParseError("unexpected content after last row", lineno);
    return C;
}

inline CodeMatrix load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open matrix file: " + path);
    return load_matrix(in);
}

inline void save_matrix(const CodeMatrix& C, std::ostream& out) {
    out << C.rows() << ' ' << C.cols() << ' ' << C.alphabet_size() << '\n';
    for (row_t r = 1; r <= C.rows(); ++r) {
        for (col_t c = 1; c <= C.cols(); ++c) {
            if (c > 1) out << ' ';
            out << C.at(r, c);
        }
        out << '\n';
    }
}

inline void save_matrix(const CodeMatrix& C, const std::string& path) {
    std::ofstream out(path, std::ios::binary); // binary: keep LF endings everywhere
    if (!out) throw ParseError("cannot open file for writing: " + path);
    save_matrix(C, out);
}

// {C[r][h] : r in R}.
inline SymbolSet column_image(const CodeMatrix& C, col_t h, const RowSubset& R) {
    if (h < 1 || h > C.cols()) throw DomainError("column_image: column index out of range");
    SymbolSet img(C.alphabet_size());
    for (row_t r : R) {
        if (r > C.rows()) throw DomainError("column_image: row index out of range");
        img.insert(C.at(r, h));
    }
    return img;
}

// Symbol maximizing |{r in U : C[r][h] = symbol}|, ties to the smallest
// symbol, plus that count.
inline std::pair<symbol_t, std::uint32_t> most_frequent_symbol(const CodeMatrix& C, col_t h,
                                                               const RowSubset& U) {
    if (U.empty()) throw DomainError("most_frequent_symbol: empty universe");
    if (h < 1 || h > C.cols()) throw DomainError("most_frequent_symbol: column index out of range");
    std::vector<std::uint32_t> count(C.alphabet_size() + 1, 0);
    for (row_t r : U) ++count[C.at(r, h)];
    symbol_t best = 1;
    for (symbol_t s = 2; s <= C.alphabet_size(); ++s)
        if (count[s] > count[best]) best = s; // strict: ties keep the smaller symbol
    return {best, count[best]};
}

// {r in U : C[r][h] = symbol}.
inline RowSubset restrict_universe(const CodeMatrix& C, col_t h, const RowSubset& U,
                                   symbol_t symbol) {
    if (symbol < 1 || symbol > C.alphabet_size())
        throw DomainError("restrict_universe: symbol out of range");
    if (h < 1 || h > C.cols()) throw DomainError("restrict_universe: column index out of range");
    std::vector<row_t> kept;
    for (row_t r : U)
        if (C.at(r, h) == symbol) kept.push_back(r);
    return RowSubset::of(std::move(kept));
}

} // namespace zelab
