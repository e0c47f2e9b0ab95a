#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "zelab/errors.hpp"
#include "zelab/matrix.hpp"
#include "zelab/phased.hpp"
#include "zelab/rng.hpp"
#include "zelab/types.hpp"

namespace zelab::sampler {

// An ensemble is a (gamma, delta)-sampler for the reference distribution D
// wrt column h when, for every 0/1 weight function wt on [q], the fraction
// of members whose wt-weighted image deviates from E[wt(h(D))] by >= gamma*q
// is at most exp(-delta*q).
struct SamplerParams {
    double gamma = 0.0;
    double delta = 0.0;

    SamplerParams() = default;
    SamplerParams(double g, double d) : gamma(g), delta(d) {
        if (!(gamma >= 0)) throw DomainError("SamplerParams: gamma must be >= 0");
        if (!std::isfinite(delta)) throw DomainError("SamplerParams: delta must be finite");
    }
};

struct SamplerReport {
    bool is_sampler = true;
    WeightFunction worst_wt;          // attains max_failure_fraction
    double max_failure_fraction = 0;  // over all weight functions examined
    double threshold = 1;             // exp(-delta*q)
    bool sampled = false;             // true: verdict is one-sided, not a proof
    std::uint64_t wt_count = 0;       // weight functions examined
};

// exp(-2 t^2 / (n_vars c^2)): tail bound for a function of n_vars independent
// variables with per-coordinate influence c, deviating by t.
inline double mcdiarmid_bound(std::uint64_t n_vars, double c, double t) {
    if (n_vars < 1) throw DomainError("mcdiarmid_bound: n_vars must be >= 1");
    if (!(c > 0)) throw DomainError("mcdiarmid_bound: c must be positive");
    if (!(t >= 0)) throw DomainError("mcdiarmid_bound: t must be >= 0");
    return std::exp(-2.0 * t * t / (static_cast<double>(n_vars) * c * c));
}

namespace detail {

inline void require_universe_in_matrix(const PhasedDistribution& D, const CodeMatrix& C,
                                       const char* who) {
    const auto& u = D.universe().indices();
    if (!u.empty() && u.back() > C.rows())
        throw DomainError(std::string(who) + ": distribution universe exceeds matrix rows");
}

} // namespace detail

// coverage[x-1] = P[x in h(R)] for R drawn from the phased distribution D:
// one minus the product over phases of (1 - p_i(x))^{a_i}, evaluated in log
// space.  Zero phases means R = empty set, so all coverages are zero.
inline std::vector<double> coverage_by_symbol(const CodeMatrix& C, col_t h,
                                              const PhasedDistribution& D) {
    detail::require_universe_in_matrix(D, C, "coverage_by_symbol");
    const std::uint32_t q = C.alphabet_size();
    const auto& rows = D.universe().indices();
    std::vector<double> log_miss(q, 0.0);
    for (const auto& phase : D.phases()) {
        std::vector<double> p(q, 0.0);
        for (std::size_t i = 0; i < rows.size(); ++i)
            p[C.at(rows[i], h) - 1] += phase.weights[i];
        for (std::uint32_t x = 0; x < q; ++x) {
            if (p[x] <= 0) continue;
            if (p[x] >= 1)
                log_miss[x] = -std::numeric_limits<double>::infinity();
            else
                log_miss[x] += static_cast<double>(phase.draws) * std::log1p(-p[x]);
        }
    }
    std::vector<double> cov(q);
    for (std::uint32_t x = 0; x < q; ++x) cov[x] = -std::expm1(log_miss[x]);
    return cov;
}

// E[wt(h(R))] for R ~ D, exactly, from per-symbol coverage probabilities.
inline double reference_expectation(const WeightFunction& wt, col_t h,
                                    const PhasedDistribution& D, const CodeMatrix& C) {
    if (wt.alphabet_size() != C.alphabet_size())
        throw DomainError("reference_expectation: weight function alphabet mismatch");
    const auto cov = coverage_by_symbol(C, h, D);
    double sum = 0;
    for (symbol_t x : wt.support().to_vector()) sum += cov[x - 1];
    return sum;
}

namespace detail {

// wt as a bitmask (bit x-1 = wt(x)), usable because the exact checker is
// gated at q <= 20.  Lexicographic order on the vector (wt(1),...,wt(q)):
// at the lowest differing bit, the mask with a 0 there is smaller.
inline bool lex_less_mask(std::uint64_t a, std::uint64_t b) {
    if (a == b) return false;
    const std::uint64_t low = (a ^ b) & (~(a ^ b) + 1);
    return (a & low) == 0;
}

struct ExactSlice {
    double max_fraction = -1;
    std::uint64_t worst_mask = 0;
};

inline ExactSlice exact_scan(std::uint64_t first, std::uint64_t last, std::uint32_t q,
                             double gamma_q, const std::vector<double>& cov,
                             const std::vector<std::uint64_t>& images) {
    ExactSlice out;
    const double L = static_cast<double>(images.size());
    for (std::uint64_t mask = first; mask < last; ++mask) {
        double expect = 0;
        for (std::uint32_t x = 0; x < q; ++x)
            if (mask >> x & 1) expect += cov[x];
        std::uint64_t fails = 0;
        for (const std::uint64_t img : images) {
            const double val = static_cast<double>(std::popcount(mask & img));
            if (std::abs(val - expect) >= gamma_q) ++fails;
        }
        const double fraction = static_cast<double>(fails) / L;
        if (fraction > out.max_fraction ||
            (fraction == out.max_fraction && lex_less_mask(mask, out.worst_mask))) {
            out.max_fraction = fraction;
            out.worst_mask = mask;
        }
    }
    return out;
}

} // namespace detail

// Exhaustive check over all 2^q weight functions.  Deterministic for any
// worker count: slices merge by (max fraction, lexicographically smallest
// witness), a total order independent of the partitioning.
inline SamplerReport check_sampler_exact(const Ensemble& ensemble, col_t h,
                                         const PhasedDistribution& D, const CodeMatrix& C,
                                         const SamplerParams& params,
                                         unsigned workers = 1) {
    const std::uint32_t q = C.alphabet_size();
    if (q > 20)
        throw DomainError(
            "check_sampler_exact: q > 20 means over a million weight functions; "
            "use check_sampler_sampled");
    if (ensemble.sets.empty())
        throw DomainError("check_sampler_exact: ensemble is empty");
    detail::require_universe_in_matrix(D, C, "check_sampler_exact");

    const auto cov = coverage_by_symbol(C, h, D);
    std::vector<std::uint64_t> images;
    images.reserve(ensemble.sets.size());
    for (const auto& R : ensemble.sets) {
        std::uint64_t mask = 0;
        for (row_t r : R) mask |= 1ull << (C.at(r, h) - 1);
        images.push_back(mask);
    }

    const std::uint64_t total = 1ull << q;
    const double gamma_q = params.gamma * static_cast<double>(q);
    if (workers < 1) workers = 1;
    if (static_cast<std::uint64_t>(workers) > total) workers = static_cast<unsigned>(total);

    std::vector<detail::ExactSlice> slices(workers);
    if (workers == 1) {
        slices[0] = detail::exact_scan(0, total, q, gamma_q, cov, images);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = total / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t first = chunk * w;
            const std::uint64_t last = (w + 1 == workers) ? total : first + chunk;
            pool.emplace_back([&, w, first, last] {
                slices[w] = detail::exact_scan(first, last, q, gamma_q, cov, images);
            });
        }
        for (auto& th : pool) th.join();
    }

    detail::ExactSlice best = slices[0];
    for (unsigned w = 1; w < workers; ++w) {
        const auto& s = slices[w];
        if (s.max_fraction > best.max_fraction ||
            (s.max_fraction == best.max_fraction &&
             detail::lex_less_mask(s.worst_mask, best.worst_mask)))
            best = s;
    }

    SamplerReport report;
    report.threshold = std::exp(-params.delta * static_cast<double>(q));
    report.max_failure_fraction = best.max_fraction;
    report.worst_wt = WeightFunction::from_mask(q, best.worst_mask);
    report.is_sampler = report.max_failure_fraction <= report.threshold;
    report.sampled = false;
    report.wt_count = total;
    return report;
}

// Randomized surrogate: all-ones and all-zeros always examined, then num_wt
// uniform weight functions.  One-sided: a "true" verdict only says no
// examined function witnessed a violation.
inline SamplerReport check_sampler_sampled(const Ensemble& ensemble, col_t h,
                                           const PhasedDistribution& D, const CodeMatrix& C,
                                           const SamplerParams& params, std::uint64_t num_wt,
                                           std::uint64_t seed) {
    if (num_wt < 1) throw DomainError("check_sampler_sampled: num_wt must be >= 1");
    if (ensemble.sets.empty())
        throw DomainError("check_sampler_sampled: ensemble is empty");
    detail::require_universe_in_matrix(D, C, "check_sampler_sampled");

    const std::uint32_t q = C.alphabet_size();
    const auto cov = coverage_by_symbol(C, h, D);
    std::vector<SymbolSet> images;
    images.reserve(ensemble.sets.size());
    for (const auto& R : ensemble.sets) images.push_back(column_image(C, h, R));

    const double L = static_cast<double>(images.size());
    const double gamma_q = params.gamma * static_cast<double>(q);

    SamplerReport report;
    report.threshold = std::exp(-params.delta * static_cast<double>(q));
    report.max_failure_fraction = -1;
    report.sampled = true;

    auto examine = [&](const WeightFunction& wt) {
        double expect = 0;
        for (symbol_t x : wt.support().to_vector()) expect += cov[x - 1];
        std::uint64_t fails = 0;
        for (const auto& img : images) {
            const double val = static_cast<double>(wt.weight_of(img));
            if (std::abs(val - expect) >= gamma_q) ++fails;
        }
        const double fraction = static_cast<double>(fails) / L;
        if (fraction > report.max_failure_fraction) {
            report.max_failure_fraction = fraction;
            report.worst_wt = wt;
        }
        ++report.wt_count;
    };

    examine(WeightFunction::all_ones(q));
    examine(WeightFunction::all_zeros(q));
    Rng rng(derive_seed(seed, {stream::sampler}));
    for (std::uint64_t i = 0; i < num_wt; ++i) examine(WeightFunction::random(q, rng));

    report.is_sampler = report.max_failure_fraction <= report.threshold;
    return report;
}

// ---------------------------------------------------------------------------
// Ensemble file format: one row subset per line as space-separated 1-based
// row indices; blank lines and #-prefixed comment lines are skipped.
// ---------------------------------------------------------------------------

inline Ensemble load_ensemble(std::istream& in) {
    Ensemble out;
    std::string line;
    int lineno = 0;
    while (zelab::detail::next_content_line(in, line, lineno)) {
        const auto values = zelab::detail::parse_ints(line, lineno);
        std::vector<row_t> rows;
        rows.reserve(values.size());
        for (const long long v : values) {
            if (v < 1 || v > 0xFFFFFFFFll)
                throw ParseError("row index out of range: " + std::to_string(v), lineno);
            rows.push_back(static_cast<row_t>(v));
        }
        out.sets.push_back(RowSubset::of(rows));
    }
    return out;
}

inline Ensemble load_ensemble(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open ensemble file: " + path);
    return load_ensemble(in);
}

inline void save_ensemble(const Ensemble& ensemble, std::ostream& out) {
    for (const auto& R : ensemble.sets) {
        bool first = true;
        for (row_t r : R) {
            if (!first) out << ' ';
            out << r;
            first = false;
        }
        out << '\n';
    }
}

inline void save_ensemble(const Ensemble& ensemble, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open ensemble file for writing: " + path);
    save_ensemble(ensemble, out);
}

} // namespace zelab::sampler
