#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zelab/coupon.hpp"
#include "zelab/errors.hpp"
#include "zelab/matrix.hpp"
#include "zelab/phased.hpp"
#include "zelab/rng.hpp"
#include "zelab/sampler.hpp"
#include "zelab/types.hpp"

namespace zelab::adversary {

// ---------------------------------------------------------------------------
// Iterated ensemble attack.  Each round draws one more phase of rows into
// every ensemble member, flags columns whose observed behaviour deviates
// from the phased reference expectation, and prunes the surviving row
// universe so flagged columns can never become rainbow.  After k rounds any
// sufficiently large member whose image misses a symbol in every column is
// a verified confusable list.
// ---------------------------------------------------------------------------

struct AttackConfig {
    double epsilon = 0.1;             // target exponent: list target is eps*q*ln q
    std::uint32_t iterations = 1;     // rounds k
    std::uint32_t ensemble_size = 16; // members kept per round (desk-scale surrogate
                                      // for the schedule's exp((delta - delta')q))
    std::uint64_t seed = 0;
    coupon::GVariant g_variant = coupon::GVariant::cumulative;

    // Negative values mean "derive from the schedule":
    double gamma = -1;       // phase-size schedule gamma; default q^{-2eps}/2
    double gamma_dev = -1;   // starting deviation fraction for verdicts; default gamma
    double gamma_prime = -1; // per-round deviation increment; default gamma_dev
    double delta_prime = -1; // per-round exponent decrement; default q^{-5eps}/4,
                             // clamped when the exponent would go negative
    double delta0 = -1;      // starting exponent; default gamma_dev^2

    std::uint32_t num_wt = 64; // weight functions per sampled-sampler verdict
    std::optional<std::uint32_t> target; // list size sought; default ceil(eps*q*ln q)
};

struct ResolvedParams {
    double gamma = 0;
    double gamma_dev = 0;
    double gamma_prime = 0;
    double delta_prime = 0;
    double delta0 = 0;
    bool schedule_gamma = false;       // gamma came from the q^{-2eps}/2 schedule
    bool schedule_delta_prime = false; // delta' came from the q^{-5eps}/4 schedule
    bool clamped_delta_prime = false;  // scheduled delta' was clamped
    std::uint32_t target = 1;
};

// Per-column measurement for one round.  A column is flagged bad when either
// verdict fails: (a) the sampled-sampler condition at (gamma~, delta~), or
// (b) the all-members image-size deviation cap gamma~*q.
struct ColumnVerdict {
    col_t column = 0;
    bool sampler_ok = true;
    bool furthermore_ok = true;
    double max_failure_fraction = 0; // worst weight-function failure fraction seen
    double max_image_dev = 0;        // max_i | |h(R_i)| - E[|h(D)|] |
    double expected_image = 0;       // E[|h(D)|]

    bool bad() const noexcept { return !(sampler_ok && furthermore_ok); }
};

struct RoundRecord {
    std::uint32_t round = 0; // 1-based
    double g_real = 0;       // scheduled phase size (real-valued)
    std::uint64_t draws = 0; // floor(g_real): rows added per member this round
    bool skipped = false;    // draws == 0: no drawing, thresholds still advance

    std::uint64_t member_size = 0; // exact |R| of every member after this round
    std::uint64_t universe_before = 0;
    std::uint64_t universe_after = 0;

    std::uint32_t bad_count = 0;
    std::vector<col_t> bad_columns;
    double bad_fraction = 0; // bad_count / columns examined

    double gamma_tilde = 0;      // deviation fraction used for verdicts
    double delta_tilde = 0;      // exponent used for verdicts
    double sampler_threshold = 1;// exp(-delta_tilde*q)
    bool verdict_vacuous = false;// delta_tilde <= 0: threshold >= 1
    double fail_bound = 0;       // 12*exp(-delta'*q), the per-round failure budget
    bool fail_bound_vacuous = false; // fail_bound >= 1
    double log_schedule_ensemble = 0;   // (delta_in - delta')*q: log of the schedule's
                                     // prescribed ensemble size

    double t_ratio = 0;               // draws/q, the t of the composition step
    bool hyp_small_delta = false;     // delta_in <= 2*gamma'^2/t
    bool hyp_delta_above_prime = false; // delta_in > delta'
    bool hyp_t_below_one = false;     // t < 1

    double mean_expected_image = 0; // mean over examined columns of E[|h(D)|]
    double max_image_dev = 0;       // max over examined columns
    double log2_universe = 0;       // log2 |U| after pruning
    double size_bound_margin = 0;   // member_size - (l_prefix - 2i - i^2*gamma*q/2)

    bool assert_member_sizes = true;  // every member has the exact cumulative size
    bool assert_pruned_images = true; // every pruned column h: |h(R u U)| <= q-1
    bool assert_universe_log = true;  // log2|U| >= log2 m - (total bad)*log2 q
};

struct Transcript {
    ResolvedParams resolved;
    std::vector<RoundRecord> rounds;
    std::vector<std::string> notes;
};

struct AttackState {
    std::uint32_t rounds_done = 0;
    RowSubset universe;
    std::vector<col_t> good_columns; // ascending
    std::vector<col_t> bad_columns;  // in pruning order
    Ensemble ensemble;
    PhasedDistribution dist; // reference distribution accumulated phase by phase
    std::vector<double> phase_reals;
    Transcript transcript;
    std::optional<std::string> infeasible_reason;
};

enum class AttackStatus { found, not_found, parameter_infeasible };

inline const char* to_string(AttackStatus s) {
    switch (s) {
        case AttackStatus::found: return "found";
        case AttackStatus::not_found: return "not-found";
        default: return "parameter-infeasible";
    }
}

struct AttackOutcome {
    AttackStatus status = AttackStatus::not_found;
    std::optional<RowSubset> list;
    bool verified = false; // list passed the direct no-rainbow check on all columns
    std::uint32_t target = 0;
    Transcript transcript;
};

// ---------------------------------------------------------------------------
// Parameter resolution
// ---------------------------------------------------------------------------

inline ResolvedParams resolve_params(const AttackConfig& cfg, std::uint32_t q,
                                     std::vector<std::string>& notes) {
    Alphabet{q};
    if (!(cfg.epsilon > 0) || !std::isfinite(cfg.epsilon))
        throw DomainError("attack: epsilon must be positive and finite");
    if (cfg.iterations < 1) throw DomainError("attack: iterations must be at least 1");
    if (cfg.ensemble_size < 1) throw DomainError("attack: ensemble size must be at least 1");
    if (cfg.num_wt < 1) throw DomainError("attack: num_wt must be at least 1");

    ResolvedParams rp;
    const double qd = static_cast<double>(q);

    rp.schedule_gamma = cfg.gamma < 0;
    rp.gamma = rp.schedule_gamma ? std::pow(qd, -2 * cfg.epsilon) / 2 : cfg.gamma;
    if (rp.schedule_gamma)
        notes.push_back("gamma defaulted to schedule q^(-2*eps)/2 = " + std::to_string(rp.gamma));

    rp.gamma_dev = cfg.gamma_dev < 0 ? rp.gamma : cfg.gamma_dev;
    rp.gamma_prime = cfg.gamma_prime < 0 ? rp.gamma_dev : cfg.gamma_prime;
    rp.delta0 = cfg.delta0 < 0 ? rp.gamma_dev * rp.gamma_dev : cfg.delta0;

    rp.schedule_delta_prime = cfg.delta_prime < 0;
    if (rp.schedule_delta_prime) {
        rp.delta_prime = std::pow(qd, -5 * cfg.epsilon) / 4;
        notes.push_back("delta' defaulted to schedule q^(-5*eps)/4 = " +
                        std::to_string(rp.delta_prime));
        const double k = static_cast<double>(cfg.iterations);
        if (rp.delta0 - k * rp.delta_prime <= 0) {
            const double clamped = rp.delta0 / (2 * k);
            notes.push_back("scheduled delta' = " + std::to_string(rp.delta_prime) +
                            " would drive the exponent nonpositive by round " +
                            std::to_string(cfg.iterations) + "; clamped to delta0/(2k) = " +
                            std::to_string(clamped));
            rp.delta_prime = clamped;
            rp.clamped_delta_prime = true;
        }
    } else {
        rp.delta_prime = cfg.delta_prime;
    }

    if (cfg.target) {
        if (*cfg.target < 1) throw DomainError("attack: target must be at least 1");
        rp.target = *cfg.target;
    } else {
        const double t = std::ceil(cfg.epsilon * qd * std::log(qd));
        rp.target = t < 1 ? 1 : static_cast<std::uint32_t>(t);
    }
    return rp;
}

// ---------------------------------------------------------------------------
// Composition
// ---------------------------------------------------------------------------

struct ComposeParams {
    double gamma = 0;        // sampler fraction of the incoming ensemble
    double delta = 0;        // sampler exponent of the incoming ensemble
    double gamma_prime = 0;  // increment: verdicts use gamma + gamma'
    double delta_prime = 0;  // decrement: verdicts use delta - delta'
    std::uint32_t num_wt = 64;
    bool image_only = false; // skip the sampler verdict (greedy baseline)
};

struct ComposeResult {
    Ensemble ensemble;
    PhasedDistribution dist; // base distribution with the fresh phase appended
    std::vector<ColumnVerdict> verdicts;
};

inline ColumnVerdict evaluate_column(const Ensemble& ens, const PhasedDistribution& dist,
                                     const CodeMatrix& C, col_t h, double gamma_tilde,
                                     double delta_tilde, std::uint32_t num_wt,
                                     std::uint64_t seed, bool image_only) {
    ColumnVerdict v;
    v.column = h;
    const auto cov = sampler::coverage_by_symbol(C, h, dist);
    v.expected_image = std::accumulate(cov.begin(), cov.end(), 0.0);
    double maxdev = 0;
    for (const auto& R : ens.sets) {
        const double size = static_cast<double>(column_image(C, h, R).size());
        maxdev = std::max(maxdev, std::abs(size - v.expected_image));
    }
    v.max_image_dev = maxdev;
    v.furthermore_ok = maxdev <= gamma_tilde * static_cast<double>(C.alphabet_size());
    if (image_only) {
        v.sampler_ok = true;
        v.max_failure_fraction = 0;
    } else {
        const auto rep = sampler::check_sampler_sampled(
            ens, h, dist, C, sampler::SamplerParams(gamma_tilde, delta_tilde), num_wt, seed);
        v.sampler_ok = rep.is_sampler;
        v.max_failure_fraction = rep.max_failure_fraction;
    }
    return v;
}

// One composition round: each of the s output members unions a uniformly
// drawn base member with `phase_size` fresh rows drawn from U.  Fresh rows
// are drawn without replacement and avoid the base member, so member sizes
// are exact (the probabilistic argument instead tolerates a q^2/m collision
// chance).  Verdicts compare against the reference distribution
// D_base joined with a uniform-on-U phase of `phase_size` draws.
inline ComposeResult compose(const Ensemble& base, const PhasedDistribution& D_base,
                             const RowSubset& U, std::uint64_t phase_size, std::uint32_t s,
                             const ComposeParams& params, std::uint64_t seed,
                             const CodeMatrix& C, const std::vector<col_t>& h_set) {
    if (s < 1) throw DomainError("compose: s must be at least 1");
    if (base.sets.empty()) throw DomainError("compose: base ensemble is empty");
    if (phase_size < 1) throw DomainError("compose: phase size must be at least 1");
    if (phase_size > U.size())
        throw InfeasibleError("compose: universe exhausted (phase size " +
                              std::to_string(phase_size) + " exceeds universe " +
                              std::to_string(U.size()) + ")");

    ComposeResult out;
    out.dist = D_base;
    out.dist.append_uniform_phase(phase_size, U);

    out.ensemble.sets.reserve(s);
    for (std::uint32_t i = 1; i <= s; ++i) {
        Rng rng(derive_seed(seed, {1, i}));
        const RowSubset& b = base.sets[static_cast<std::size_t>(rng.below(base.sets.size()))];
        std::vector<row_t> pool;
        pool.reserve(U.size());
        for (row_t r : U)
            if (!b.contains(r)) pool.push_back(r);
        if (pool.size() < phase_size)
            throw InfeasibleError("compose: a member draw needs " + std::to_string(phase_size) +
                                  " fresh rows but only " + std::to_string(pool.size()) +
                                  " remain outside the base member");
        std::vector<row_t> rows(b.begin(), b.end());
        rows.reserve(rows.size() + phase_size);
        for (std::uint64_t j = 0; j < phase_size; ++j) {
            const std::uint64_t pick = j + rng.below(pool.size() - j);
            std::swap(pool[j], pool[pick]);
            rows.push_back(pool[j]);
        }
        out.ensemble.sets.push_back(RowSubset::of(rows));
    }

    out.verdicts.reserve(h_set.size());
    for (col_t h : h_set)
        out.verdicts.push_back(evaluate_column(out.ensemble, out.dist, C, h,
                                               params.gamma + params.gamma_prime,
                                               params.delta - params.delta_prime, params.num_wt,
                                               derive_seed(seed, {2, h}), params.image_only));
    return out;
}

// ---------------------------------------------------------------------------
// Pruning
// ---------------------------------------------------------------------------

namespace detail {

// Restrict the universe to each bad column's most frequent symbol, in
// ascending column order.  Throws InfeasibleError (before mutating the
// universe for that column) if a restriction would empty it.
inline void prune_into(const CodeMatrix& C, AttackState& state, std::vector<col_t> bad) {
    std::sort(bad.begin(), bad.end());
    for (col_t h : bad) {
        const std::uint64_t before = state.universe.size();
        const auto [sym, count] = most_frequent_symbol(C, h, state.universe);
        if (count == 0)
            throw InfeasibleError("prune: universe emptied at column " + std::to_string(h));
        RowSubset next = restrict_universe(C, h, state.universe, sym);
        // Pigeonhole: the most frequent symbol keeps at least ceil(|U|/q) rows.
        if (next.size() * static_cast<std::uint64_t>(C.alphabet_size()) < before)
            throw std::logic_error("prune: most frequent symbol kept fewer than |U|/q rows");
        state.universe = std::move(next);
        state.good_columns.erase(
            std::remove(state.good_columns.begin(), state.good_columns.end(), h),
            state.good_columns.end());
        state.bad_columns.push_back(h);
    }
}

} // namespace detail

// Standalone pruning step: returns the updated state.
inline AttackState prune(const CodeMatrix& C, AttackState state, const std::vector<col_t>& bad) {
    for (col_t h : bad)
        if (std::find(state.good_columns.begin(), state.good_columns.end(), h) ==
            state.good_columns.end())
            throw DomainError("prune: column " + std::to_string(h) +
                              " is not a current good column");
    detail::prune_into(C, state, bad);
    return state;
}

// Every pruned column must stay short of rainbow against any member joined
// with the whole surviving universe.
inline bool pruned_images_capped(const CodeMatrix& C, const AttackState& state) {
    for (col_t h : state.bad_columns) {
        const SymbolSet universe_img = column_image(C, h, state.universe);
        for (const auto& R : state.ensemble.sets) {
            SymbolSet img = column_image(C, h, R);
            img.unite(universe_img);
            if (img.covers_alphabet()) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Iteration
// ---------------------------------------------------------------------------

namespace detail {

inline AttackState iterate_impl(const CodeMatrix& C, const AttackConfig& cfg, bool image_only) {
    const std::uint32_t q = C.alphabet_size();
    const double qd = static_cast<double>(q);
    const std::uint32_t m = C.rows();
    const std::uint32_t n = C.cols();

    AttackState st;
    st.transcript.resolved = resolve_params(cfg, q, st.transcript.notes);
    const ResolvedParams& rp = st.transcript.resolved;
    if (image_only)
        st.transcript.notes.push_back("greedy baseline: single member, image-size test only");

    st.universe = RowSubset::range(1, m);
    st.good_columns.resize(n);
    std::iota(st.good_columns.begin(), st.good_columns.end(), col_t{1});
    st.ensemble.sets = {RowSubset{}};
    st.dist = PhasedDistribution(RowSubset::range(1, m));

    try {
        st.phase_reals = coupon::phase_sizes(qd, rp.gamma, cfg.iterations, cfg.g_variant).g;
    } catch (const coupon::PhaseSizeError& e) {
        st.infeasible_reason = e.what();
        st.transcript.notes.push_back(*st.infeasible_reason);
        return st;
    } catch (const DomainError& e) { // q < 3: the schedule starts at q - 2 <= 0
        st.infeasible_reason = e.what();
        st.transcript.notes.push_back(*st.infeasible_reason);
        return st;
    }

    const auto ells = coupon::ell_sequence(qd, cfg.iterations);

    double gamma_cur = rp.gamma_dev;
    double delta_cur = rp.delta0;
    std::uint64_t member_size = 0;

    for (std::uint32_t i = 1; i <= cfg.iterations; ++i) {
        const std::uint64_t round_seed = derive_seed(cfg.seed, {stream::adversary, i});
        RoundRecord rec;
        rec.round = i;
        rec.g_real = st.phase_reals[i - 1];
        rec.draws = static_cast<std::uint64_t>(rec.g_real); // g_real > 0 guaranteed
        rec.skipped = rec.draws == 0;
        rec.gamma_tilde = gamma_cur + rp.gamma_prime;
        rec.delta_tilde = delta_cur - rp.delta_prime;
        rec.sampler_threshold = std::exp(-rec.delta_tilde * qd);
        rec.verdict_vacuous = rec.delta_tilde <= 0;
        rec.fail_bound = 12 * std::exp(-rp.delta_prime * qd);
        rec.fail_bound_vacuous = rec.fail_bound >= 1;
        rec.log_schedule_ensemble = (delta_cur - rp.delta_prime) * qd;
        rec.t_ratio = static_cast<double>(rec.draws) / qd;
        rec.hyp_t_below_one = !rec.skipped && rec.t_ratio < 1;
        rec.hyp_small_delta =
            !rec.skipped && delta_cur <= 2 * rp.gamma_prime * rp.gamma_prime / rec.t_ratio;
        rec.hyp_delta_above_prime = delta_cur > rp.delta_prime;
        rec.universe_before = st.universe.size();

        std::vector<ColumnVerdict> verdicts;
        bool round_failed = false;
        if (rec.skipped) {
            st.transcript.notes.push_back("round " + std::to_string(i) +
                                          ": scheduled phase floors to zero; no rows drawn, "
                                          "thresholds still advance");
            verdicts.reserve(st.good_columns.size());
            for (col_t h : st.good_columns)
                verdicts.push_back(evaluate_column(st.ensemble, st.dist, C, h, rec.gamma_tilde,
                                                   rec.delta_tilde, cfg.num_wt,
                                                   derive_seed(round_seed, {2, h}), image_only));
        } else {
            try {
                ComposeParams cp;
                cp.gamma = gamma_cur;
                cp.delta = delta_cur;
                cp.gamma_prime = rp.gamma_prime;
                cp.delta_prime = rp.delta_prime;
                cp.num_wt = cfg.num_wt;
                cp.image_only = image_only;
                ComposeResult res = compose(st.ensemble, st.dist, st.universe, rec.draws,
                                            cfg.ensemble_size, cp, round_seed, C,
                                            st.good_columns);
                st.ensemble = std::move(res.ensemble);
                st.dist = std::move(res.dist);
                verdicts = std::move(res.verdicts);
                member_size += rec.draws;
            } catch (const InfeasibleError& e) {
                st.infeasible_reason = e.what();
                st.transcript.notes.push_back(*st.infeasible_reason);
                round_failed = true;
            }
        }
        rec.member_size = member_size;

        if (!round_failed) {
            double sum_expected = 0;
            for (const auto& v : verdicts) {
                sum_expected += v.expected_image;
                rec.max_image_dev = std::max(rec.max_image_dev, v.max_image_dev);
                if (v.bad()) rec.bad_columns.push_back(v.column);
            }
            rec.bad_count = static_cast<std::uint32_t>(rec.bad_columns.size());
            if (!verdicts.empty()) {
                rec.mean_expected_image = sum_expected / static_cast<double>(verdicts.size());
                rec.bad_fraction =
                    static_cast<double>(rec.bad_count) / static_cast<double>(verdicts.size());
            }
            try {
                prune_into(C, st, rec.bad_columns);
            } catch (const InfeasibleError& e) {
                st.infeasible_reason = e.what();
                st.transcript.notes.push_back(*st.infeasible_reason);
                round_failed = true;
            }
        }

        rec.universe_after = st.universe.size();
        rec.log2_universe = std::log2(static_cast<double>(st.universe.size()));
        rec.size_bound_margin =
            static_cast<double>(member_size) -
            (ells.prefix[i - 1] - 2.0 * i - static_cast<double>(i) * i * rp.gamma * qd / 2);

        rec.assert_member_sizes = true;
        for (const auto& R : st.ensemble.sets)
            if (R.size() != member_size) rec.assert_member_sizes = false;
        rec.assert_pruned_images = pruned_images_capped(C, st);
        rec.assert_universe_log =
            rec.log2_universe >= std::log2(static_cast<double>(m)) -
                                     static_cast<double>(st.bad_columns.size()) * std::log2(qd) -
                                     1e-9;

        st.transcript.rounds.push_back(std::move(rec));
        if (round_failed) break;
        st.rounds_done = i;
        gamma_cur = st.transcript.rounds.back().gamma_tilde;
        delta_cur = st.transcript.rounds.back().delta_tilde;
    }
    return st;
}

} // namespace detail

inline AttackState iterate(const CodeMatrix& C, const AttackConfig& cfg) {
    return detail::iterate_impl(C, cfg, false);
}

// ---------------------------------------------------------------------------
// Extraction
// ---------------------------------------------------------------------------

// Scan members of size >= target for one with no rainbow column anywhere in
// the matrix; such a member is a directly verified confusable list and is
// returned whole.
inline AttackOutcome extract_list(const CodeMatrix& C, const AttackState& state,
                                  std::uint32_t target) {
    AttackOutcome out;
    out.transcript = state.transcript;
    out.target = target;
    if (state.infeasible_reason) {
        out.status = AttackStatus::parameter_infeasible;
        return out;
    }
    for (const auto& R : state.ensemble.sets) {
        if (R.size() < target) continue;
        bool confusable = true;
        for (col_t h = 1; h <= C.cols() && confusable; ++h)
            if (column_image(C, h, R).covers_alphabet()) confusable = false;
        if (confusable) {
            out.status = AttackStatus::found;
            out.list = R;
            out.verified = true;
            return out;
        }
    }
    out.status = AttackStatus::not_found;
    return out;
}

inline AttackOutcome run_attack(const CodeMatrix& C, const AttackConfig& cfg) {
    const AttackState state = iterate(C, cfg);
    return extract_list(C, state, state.transcript.resolved.target);
}

// Single growing set, image-size deviation test only, same pruning: the
// ensemble-free procedure the iterated attack improves on.
inline AttackOutcome greedy_baseline(const CodeMatrix& C, const AttackConfig& cfg) {
    AttackConfig single = cfg;
    single.ensemble_size = 1;
    const AttackState state = detail::iterate_impl(C, single, true);
    return extract_list(C, state, state.transcript.resolved.target);
}

} // namespace zelab::adversary
