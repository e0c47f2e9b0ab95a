// Acceptance gate for the zelab library.  Runs nine end-to-end criteria and
// prints one PASS/FAIL line per criterion; the process exits with the number
// of failed criteria.  Each criterion is self-contained and seeded, so the
// gate is deterministic run to run.
//
// A hidden mode, --emit-golden-8e, reruns the q=6 attack benchmark and prints
// the golden header used by criterion 8; see golden_attack.hpp.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <deque>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "zelab/adversary.hpp"
#include "zelab/bounds.hpp"
#include "zelab/construct.hpp"
#include "zelab/coupon.hpp"
#include "zelab/errors.hpp"
#include "zelab/matrix.hpp"
#include "zelab/rng.hpp"
#include "zelab/sampler.hpp"
#include "zelab/types.hpp"
#include "zelab/verifier.hpp"

#include "golden_attack.hpp"

namespace {

using namespace zelab;

constexpr std::uint64_t kMaster = 0xACCE5501D00DULL;

struct Ctx {
    std::vector<std::string> errs;
    std::string info;

    void fail(std::string msg) {
        if (errs.size() < 200) errs.push_back(std::move(msg));
    }
    void expect(bool ok, const std::string& msg) {
        if (!ok) fail(msg);
    }
    template <typename... Args>
    void notef(const char* fmt, Args... args) {
        char buf[256];
        std::snprintf(buf, sizeof buf, fmt, args...);
        info = buf;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------
// small primitive helpers (kept independent of the library's verifier)

bool primitive_has_rainbow(const CodeMatrix& C, const std::vector<row_t>& rows) {
    const std::uint32_t q = C.alphabet_size();
    const std::uint64_t full = q >= 64 ? ~0ULL : ((1ULL << q) - 1);
    for (std::uint32_t j = 1; j <= C.cols(); ++j) {
        std::uint64_t mask = 0;
        for (row_t r : rows) mask |= 1ULL << (C.at(r, j) - 1);
        if (mask == full) return true;
    }
    return false;
}

// Builds an output word that differs from every listed row in every
// coordinate, or reports that none exists (i.e. some column is rainbow).
std::optional<std::vector<symbol_t>> primitive_confusing_word(const CodeMatrix& C,
                                                              const std::vector<row_t>& rows) {
    const std::uint32_t q = C.alphabet_size();
    std::vector<symbol_t> word;
    word.reserve(C.cols());
    for (std::uint32_t j = 1; j <= C.cols(); ++j) {
        std::uint64_t mask = 0;
        for (row_t r : rows) mask |= 1ULL << (C.at(r, j) - 1);
        symbol_t pick = 0;
        for (std::uint32_t s = 1; s <= q; ++s)
            if (!(mask & (1ULL << (s - 1)))) {
                pick = static_cast<symbol_t>(s);
                break;
            }
        if (pick == 0) return std::nullopt;
        word.push_back(pick);
    }
    return word;
}

CodeMatrix constant_matrix(std::uint32_t m, std::uint32_t n, std::uint32_t q) {
    CodeMatrix C(m, n, q);
    for (std::uint32_t r = 1; r <= m; ++r)
        for (std::uint32_t c = 1; c <= n; ++c) C.set(r, c, 1);
    return C;
}

// ---------------------------------------------------------------------------
// criterion 1: the two verifiers agree on 1000 seeded random instances

void criterion_verifier_equivalence(Ctx& ctx) {
    const auto t0 = std::chrono::steady_clock::now();
    std::uint32_t agreed = 0;
    for (std::uint32_t i = 0; i < 1000; ++i) {
        Rng rng(derive_seed(kMaster, {1, i}));
        const auto m = static_cast<std::uint32_t>(2 + rng.below(7));  // 2..8
        const auto n = static_cast<std::uint32_t>(1 + rng.below(5));  // 1..5
        const auto q = static_cast<std::uint32_t>(2 + rng.below(3));  // 2..4
        const std::uint32_t lmax = std::min<std::uint32_t>(3, m - 1);
        const auto ell = static_cast<std::uint32_t>(1 + rng.below(lmax));
        const CodeMatrix C = construct::random_code(m, n, q, derive_seed(kMaster, {1, i, 7}));

        const verifier::Verdict a = verifier::is_list_decoding(C, ell);
        const verifier::Verdict b = verifier::confusable_by_output(C, ell);
        if (a.is_code != b.is_code) {
            std::ostringstream ss;
            ss << "instance " << i << " (m=" << m << ",n=" << n << ",q=" << q << ",l=" << ell
               << "): subset verifier says " << a.is_code << ", output oracle says "
               << b.is_code;
            ctx.fail(ss.str());
            continue;
        }
        if (!a.is_code) {
            if (!a.witness || a.witness->size() != ell + 1) {
                ctx.fail("instance " + std::to_string(i) + ": negative verdict lacks a witness");
                continue;
            }
            std::vector<row_t> rows(a.witness->begin(), a.witness->end());
            if (!primitive_confusing_word(C, rows)) {
                ctx.fail("instance " + std::to_string(i) + ": witness has a rainbow column");
                continue;
            }
        }
        ++agreed;
    }
    const double secs = seconds_since(t0);
    ctx.expect(secs < 60.0, "took " + std::to_string(secs) + " s, budget is 60 s");
    ctx.notef("%u/1000 agree, %.2f s", agreed, secs);
}

// ---------------------------------------------------------------------------
// criterion 2: exact minimum lengths, cross-checked against a primitive
// in-binary oracle for (m=4, q=3, l=2)

// Enumerates every 4x n ternary matrix (no canonicalization, no pruning) and
// reports the smallest n where some matrix has a rainbow column in every
// 3-row subset.  Slow by design: it shares no code with the library.
std::uint32_t oracle_n_4_3_2() {
    for (std::uint32_t n = 1; n <= 3; ++n) {
        std::uint64_t total = 1;
        for (std::uint32_t i = 0; i < 4 * n; ++i) total *= 3;
        for (std::uint64_t code = 0; code < total; ++code) {
            std::uint32_t digit[4][3];
            std::uint64_t rest = code;
            for (std::uint32_t r = 0; r < 4; ++r)
                for (std::uint32_t c = 0; c < n; ++c) {
                    digit[r][c] = static_cast<std::uint32_t>(rest % 3);
                    rest /= 3;
                }
            bool good = true;
            for (std::uint32_t skip = 0; skip < 4 && good; ++skip) {
                bool rainbow = false;
                for (std::uint32_t c = 0; c < n && !rainbow; ++c) {
                    std::uint32_t mask = 0;
                    for (std::uint32_t r = 0; r < 4; ++r)
                        if (r != skip) mask |= 1u << digit[r][c];
                    rainbow = mask == 0b111u;
                }
                good = rainbow;
            }
            if (good) return n;
        }
    }
    return 0;
}

void criterion_exact_min_n(Ctx& ctx) {
    const auto t0 = std::chrono::steady_clock::now();
    constexpr std::uint64_t kBudget = 10'000'000;

    const auto r332 = construct::search_min_n(3, 3, 2, kBudget);
    ctx.expect(r332.status == construct::MinNStatus::found && r332.n == 1,
               "n(3,3,2) != 1");

    for (std::uint32_t m = 2; m <= 16; ++m) {
        const auto r = construct::search_min_n(m, 2, 1, kBudget);
        const auto want = static_cast<std::uint32_t>(std::ceil(std::log2(double(m))));
        if (r.status != construct::MinNStatus::found || r.n != want) {
            ctx.fail("n(" + std::to_string(m) + ",2,1) != ceil(log2 m) = " +
                     std::to_string(want));
        } else if (r.example) {
            const auto v = verifier::is_list_decoding(*r.example, 1);
            ctx.expect(v.is_code, "example for n(" + std::to_string(m) + ",2,1) fails to verify");
        }
    }

    const std::uint32_t golden = oracle_n_4_3_2();
    const auto r432 = construct::search_min_n(4, 3, 2, kBudget);
    ctx.expect(golden == 2, "primitive oracle surprisingly says n(4,3,2) = " +
                                std::to_string(golden));
    ctx.expect(r432.status == construct::MinNStatus::found && r432.n == golden,
               "search_min_n disagrees with the brute-force oracle on n(4,3,2)");

    const double secs = seconds_since(t0);
    ctx.expect(secs < 600.0, "took " + std::to_string(secs) + " s, budget is 600 s");
    ctx.notef("n(3,3,2)=1, n(m,2,1)=ceil(log2 m) for m=2..16, n(4,3,2)=%u = oracle, %.2f s",
              golden, secs);
}

// ---------------------------------------------------------------------------
// criterion 3: union-bound construction length passes verification in >= 85
// of 100 seeds at (m=6, q=3, l=2, target failure 0.1)

void criterion_probabilistic_construction(Ctx& ctx) {
    const std::uint32_t n = construct::required_columns(6, 3, 2, 0.1);
    ctx.expect(n == 22, "required_columns(6,3,2,0.1) = " + std::to_string(n) + ", expected 22");

    std::uint32_t passes = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const CodeMatrix C = construct::random_code(6, n, 3, seed);
        if (verifier::is_list_decoding(C, 2).is_code) ++passes;
    }
    ctx.expect(passes >= 85, "only " + std::to_string(passes) +
                                 "/100 random codes verified; need >= 85");
    ctx.notef("%u/100 seeds verify at n=%u", passes, n);
}

// ---------------------------------------------------------------------------
// criterion 4: exact expectation vs Monte Carlo on a 20-point grid, and the
// uniform closed form

void criterion_coupon_exactness(Ctx& ctx) {
    struct Phase {
        std::uint64_t draws;
        int kind; // 0 uniform, 1 zipf, 2 point
        double param;
    };
    struct Point {
        std::uint32_t q;
        std::vector<Phase> phases;
    };
    const std::vector<Point> grid = {
        {4, {{8, 0, 0}}},
        {4, {{3, 1, 1.0}}},
        {4, {{2, 2, 2}}},
        {4, {{2, 0, 0}, {3, 1, 0.5}}},
        {4, {{1, 2, 1}, {1, 2, 2}, {1, 2, 3}, {1, 2, 4}, {4, 0, 0}}},
        {4, {{5, 1, 2.0}, {5, 0, 0}}},
        {16, {{16, 0, 0}}},
        {16, {{10, 1, 1.2}}},
        {16, {{4, 2, 7}}},
        {16, {{8, 0, 0}, {8, 1, 0.8}}},
        {16, {{2, 2, 1}, {6, 0, 0}, {4, 1, 1.0}}},
        {16, {{1, 0, 0}, {2, 0, 0}, {3, 0, 0}, {4, 0, 0}, {5, 0, 0}}},
        {16, {{3, 2, 16}, {3, 2, 1}}},
        {64, {{64, 0, 0}}},
        {64, {{32, 1, 0.7}}},
        {64, {{5, 2, 33}}},
        {64, {{20, 0, 0}, {20, 1, 1.5}}},
        {64, {{10, 1, 0.3}, {10, 2, 64}, {10, 0, 0}}},
        {64, {{13, 0, 0}, {13, 0, 0}, {13, 0, 0}, {13, 0, 0}, {13, 0, 0}}},
        {64, {{100, 0, 0}, {27, 1, 1.0}}},
    };

    std::uint32_t within = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto& pt = grid[i];
        coupon::PhaseEnsembleSpec spec(pt.q);
        for (const auto& ph : pt.phases) {
            std::vector<double> pmf;
            switch (ph.kind) {
                case 0: pmf = coupon::uniform_pmf(pt.q); break;
                case 1: pmf = coupon::zipf_pmf(pt.q, ph.param); break;
                default: pmf = coupon::point_pmf(pt.q, static_cast<symbol_t>(ph.param));
            }
            spec.append_phase(ph.draws, pmf);
        }
        const double exact = coupon::exact_phased_expectation(spec);
        const auto mc =
            coupon::mc_phased_expectation(spec, 100'000, derive_seed(kMaster, {4, i}), 1);
        const double err = std::abs(exact - mc.mean);
        const double tol = 4.0 * mc.std_error + 1e-9;
        if (err <= tol) {
            ++within;
        } else {
            std::ostringstream ss;
            ss << "grid point " << i << " (q=" << pt.q << "): exact " << exact << " vs mc "
               << mc.mean << " +- " << mc.std_error << " (|diff| " << err << " > 4 se)";
            ctx.fail(ss.str());
        }
    }

    std::uint32_t closed = 0;
    for (std::uint32_t q : {4u, 16u, 64u}) {
        for (std::uint64_t a : {std::uint64_t(1), std::uint64_t(2), std::uint64_t(q),
                                std::uint64_t(2 * q + 5)}) {
            coupon::PhaseEnsembleSpec spec(q);
            spec.append_phase(a, coupon::uniform_pmf(q));
            const double exact = coupon::exact_phased_expectation(spec);
            const double form = q * (1.0 - std::pow(1.0 - 1.0 / q, double(a)));
            if (std::abs(exact - form) <= 1e-9 * std::max(1.0, std::abs(form))) {
                ++closed;
            } else {
                ctx.fail("uniform closed form off at q=" + std::to_string(q) +
                         ", a=" + std::to_string(a));
            }
        }
    }
    ctx.notef("%u/20 grid points within 4 se at 1e5 trials; %u/12 closed-form checks at 1e-9",
              within, closed);
}

// ---------------------------------------------------------------------------
// criterion 5: the expectation upper bound holds on 100 random and 10
// heavy-head ensembles per q in {64, 256, 1024} at eps=0.3, lambda=0.05

void criterion_expectation_bound(Ctx& ctx) {
    constexpr double eps = 0.3, lambda = 0.05;
    std::uint32_t holds = 0, total = 0;

    for (std::uint32_t q : {64u, 256u, 1024u}) {
        const double a_cap_d = eps * q * std::log(double(q));
        const auto a_cap = static_cast<std::uint64_t>(a_cap_d) - 1;
        const auto k_cap = static_cast<std::uint32_t>(std::exp(1.0) * std::pow(q, eps));
        const std::uint32_t head =
            static_cast<std::uint32_t>(std::ceil(std::pow(q, 1.0 - 2 * eps - lambda)));

        auto check = [&](const coupon::PhaseEnsembleSpec& spec, const std::string& tag) {
            ++total;
            const auto rep = coupon::expectation_upper_bound(spec, {eps, lambda});
            if (rep.holds) {
                ++holds;
            } else {
                std::ostringstream ss;
                ss << tag << " at q=" << q << ": exact " << rep.exact << " > bound "
                   << rep.bound;
                ctx.fail(ss.str());
            }
        };

        for (std::uint32_t i = 0; i < 100; ++i) {
            Rng rng(derive_seed(kMaster, {5, q, i}));
            const auto k = static_cast<std::uint32_t>(
                1 + rng.below(std::min<std::uint32_t>(8, k_cap)));
            coupon::PhaseEnsembleSpec spec(q);
            std::uint64_t budget = a_cap;
            for (std::uint32_t p = 0; p < k; ++p) {
                const std::uint64_t left = k - 1 - p;
                const std::uint64_t hi = budget - left; // keep one draw per later phase
                const std::uint64_t draws = 1 + rng.below(std::max<std::uint64_t>(1, hi / k));
                budget -= draws;
                std::vector<double> pmf;
                switch (rng.below(4)) {
                    case 0: pmf = coupon::uniform_pmf(q); break;
                    case 1: pmf = coupon::zipf_pmf(q, 2.5 * rng.unit()); break;
                    case 2:
                        pmf = coupon::point_pmf(
                            q, static_cast<symbol_t>(1 + rng.below(q)));
                        break;
                    default: {
                        pmf.resize(q);
                        double sum = 0;
                        for (auto& w : pmf) {
                            const double u = rng.unit();
                            w = u * u * u + 1e-12;
                            sum += w;
                        }
                        for (auto& w : pmf) w /= sum;
                    }
                }
                spec.append_phase(draws, pmf);
            }
            check(spec, "random ensemble " + std::to_string(i));
        }

        for (std::uint32_t i = 0; i < 10; ++i) {
            Rng rng(derive_seed(kMaster, {5, q, 1000 + i}));
            const auto k = static_cast<std::uint32_t>(
                1 + rng.below(std::min<std::uint32_t>(8, k_cap)));
            coupon::PhaseEnsembleSpec spec(q);
            for (std::uint32_t p = 0; p < k; ++p) {
                const std::uint64_t draws = 1 + rng.below(a_cap / (2 * k));
                if (i % 2 == 0) {
                    // point masses cycling through the head symbols
                    spec.append_phase(draws, coupon::point_pmf(
                                                 q, static_cast<symbol_t>(1 + p % head)));
                } else {
                    // random weights confined to the head
                    std::vector<double> pmf(q, 0.0);
                    double sum = 0;
                    for (std::uint32_t s = 0; s < head; ++s) {
                        pmf[s] = rng.unit() + 1e-9;
                        sum += pmf[s];
                    }
                    for (auto& w : pmf) w /= sum;
                    spec.append_phase(draws, pmf);
                }
            }
            check(spec, "heavy-head ensemble " + std::to_string(i));
        }

        // the hypotheses themselves must be enforced, not assumed
        bool threw = false;
        try {
            coupon::PhaseEnsembleSpec spec(q);
            spec.append_phase(static_cast<std::uint64_t>(a_cap_d) + q, coupon::uniform_pmf(q));
            (void)coupon::expectation_upper_bound(spec, {eps, lambda});
        } catch (const DomainError&) {
            threw = true;
        }
        ctx.expect(threw, "oversized draw count was not rejected at q=" + std::to_string(q));
    }
    ctx.notef("%u/%u ensembles hold (3 q values x 110); hypothesis guards enforced", holds,
              total);
}

// ---------------------------------------------------------------------------
// criterion 6: the list-size recurrence prefix covers eps*q*ln q within
// ceil(e*q^eps) rounds on the 20-point grid

void criterion_list_size_recurrence(Ctx& ctx) {
    const auto t0 = std::chrono::steady_clock::now();
    std::uint32_t ok = 0;
    for (double q : {1e2, 1e3, 1e4, 1e5}) {
        for (double eps : {0.05, 0.1, 0.2, 0.3, 0.5}) {
            const auto k =
                static_cast<std::uint32_t>(std::ceil(std::exp(1.0) * std::pow(q, eps)));
            const auto seq = coupon::ell_sequence(q, k);
            const double need = eps * q * std::log(q);
            if (seq.prefix[k - 1] >= need) {
                ++ok;
            } else {
                std::ostringstream ss;
                ss << "q=" << q << ", eps=" << eps << ": prefix " << seq.prefix[k - 1]
                   << " < " << need;
                ctx.fail(ss.str());
            }
            // closed-form re-derivation, independent long-double accumulation
            long double prefix = 0;
            for (std::uint32_t i = 0; i < k; ++i) {
                const long double ell = q * std::exp(double(-prefix / q));
                if (std::abs(double(ell - seq.ell[i])) > 1e-9 * double(ell))
                    ctx.fail("recurrence/closed-form mismatch at q=" + std::to_string(q) +
                             ", i=" + std::to_string(i));
                prefix += ell;
                if (std::abs(double(prefix - seq.prefix[i])) > 1e-9 * double(prefix))
                    ctx.fail("prefix mismatch at q=" + std::to_string(q) +
                             ", i=" + std::to_string(i));
            }
        }
    }
    const double secs = seconds_since(t0);
    ctx.expect(secs < 5.0, "took " + std::to_string(secs) + " s, budget is 5 s");
    ctx.notef("%u/20 grid points cover eps*q*ln q; closed form agrees to 1e-9 (%.2f s)", ok,
              secs);
}

// ---------------------------------------------------------------------------
// criterion 7: exact and sampled sampler checkers agree on 200 engineered
// ensembles at q=12; the McDiarmid evaluator is exact at (100, 1, 10)

void criterion_sampler_checkers(Ctx& ctx) {
    const std::uint32_t q = 12;
    CodeMatrix C(q, 1, q);
    for (std::uint32_t r = 1; r <= q; ++r) C.set(r, 1, static_cast<symbol_t>(r));

    const RowSubset universe = RowSubset::range(1, q);
    PhasedDistribution D(universe);
    D.append_uniform_phase(q, universe); // per-symbol hit probability 1-(11/12)^12

    std::uint32_t agree = 0;
    for (std::uint32_t i = 0; i < 200; ++i) {
        Rng rng(derive_seed(kMaster, {7, i}));
        Ensemble ens;
        const bool family_a = i < 100;
        if (family_a) {
            // members are arbitrary; gamma*q = 8.4 exceeds the largest possible
            // deviation (~7.78), so both verdicts must be positive
            const auto members = 6 + rng.below(35);
            for (std::uint64_t jm = 0; jm < members; ++jm) {
                std::vector<row_t> rows;
                for (std::uint32_t r = 1; r <= q; ++r)
                    if (rng.below(2)) rows.push_back(r);
                if (rows.empty()) rows.push_back(static_cast<row_t>(1 + rng.below(q)));
                ens.sets.push_back(RowSubset::of(rows));
            }
        } else {
            // half singletons (image weight 1 under all-ones), half full range
            // (image weight 12): at gamma*q = 5.4 exactly the singleton half
            // deviates, and the always-examined all-ones weight exposes it
            const auto t = 3 + rng.below(18);
            for (std::uint64_t jm = 0; jm < t; ++jm) {
                ens.sets.push_back(
                    RowSubset::of({static_cast<row_t>(1 + rng.below(q))}));
                ens.sets.push_back(universe);
            }
        }
        const sampler::SamplerParams params(family_a ? 0.7 : 0.45, family_a ? 0.05 : 0.1);
        const auto exact = sampler::check_sampler_exact(ens, 1, D, C, params, 1);
        const auto sampled = sampler::check_sampler_sampled(ens, 1, D, C, params, 4096,
                                                            derive_seed(kMaster, {7, i, 1}));
        if (exact.is_sampler == sampled.is_sampler && exact.is_sampler == family_a) {
            ++agree;
        } else {
            std::ostringstream ss;
            ss << "ensemble " << i << ": exact " << exact.is_sampler << ", sampled "
               << sampled.is_sampler << ", expected " << family_a;
            ctx.fail(ss.str());
        }
        if (family_a && exact.max_failure_fraction != 0.0)
            ctx.fail("family-A ensemble " + std::to_string(i) + " has a deviating member");
        if (!family_a && exact.max_failure_fraction < 0.5)
            ctx.fail("family-B ensemble " + std::to_string(i) + " failed to deviate");
    }

    const double md = sampler::mcdiarmid_bound(100, 1, 10);
    ctx.expect(std::abs(md - std::exp(-2.0)) <= 1e-12,
               "mcdiarmid_bound(100,1,10) != e^-2 to 1e-12");
    ctx.notef("%u/200 ensembles agree at num_wt=4096; McDiarmid(100,1,10)=e^-2", agree);
}

// ---------------------------------------------------------------------------
// criterion 8: adversary soundness and mechanics

struct Recorded {
    const CodeMatrix* C;
    adversary::AttackOutcome out;
};

std::deque<CodeMatrix> g_kept;
std::vector<Recorded> g_runs;

void record(const CodeMatrix& C, adversary::AttackOutcome out) {
    g_kept.push_back(C);
    g_runs.push_back({&g_kept.back(), std::move(out)});
}

// the pilot-calibrated q=6 benchmark: a fixed random code, five as-written
// rounds, deviation thresholds beyond reach so pruning stays quiet
adversary::AttackOutcome run_benchmark_attack(std::uint64_t seed, const CodeMatrix& C) {
    adversary::AttackConfig cfg;
    cfg.epsilon = 0.65; // default target ceil(0.65 * 6 * ln 6) = 7
    cfg.iterations = 5;
    cfg.ensemble_size = 64;
    cfg.num_wt = 128;
    cfg.g_variant = coupon::GVariant::as_written;
    cfg.gamma = 0.05;
    cfg.gamma_dev = 0.6;
    cfg.seed = seed;
    return adversary::run_attack(C, cfg);
}

CodeMatrix benchmark_matrix() { return construct::random_code(4096, 16, 6, 424242); }

void criterion_adversary(Ctx& ctx) {
    // (b) all-constant matrices fall in round 1
    std::uint32_t constant_found = 0;
    {
        const std::array<std::array<std::uint32_t, 3>, 3> shapes = {
            {{40, 8, 5}, {30, 3, 4}, {60, 2, 7}}};
        for (std::size_t i = 0; i < shapes.size(); ++i) {
            const CodeMatrix C = constant_matrix(shapes[i][0], shapes[i][1], shapes[i][2]);
            adversary::AttackConfig cfg;
            cfg.epsilon = 0.3;
            cfg.iterations = 1;
            cfg.ensemble_size = 8;
            cfg.seed = derive_seed(kMaster, {8, 2, i});
            auto out = adversary::run_attack(C, cfg);
            const bool ok = out.status == adversary::AttackStatus::found && out.verified &&
                            out.transcript.rounds.size() == 1;
            if (ok)
                ++constant_found;
            else
                ctx.fail("constant matrix " + std::to_string(i) +
                         " was not broken in round 1");
            record(C, std::move(out));

            auto base = adversary::greedy_baseline(C, cfg);
            ctx.expect(base.status == adversary::AttackStatus::found,
                       "greedy baseline missed constant matrix " + std::to_string(i));
            record(C, std::move(base));
        }
    }

    // (c) verified codes never yield a list of size l+1
    std::uint32_t not_found = 0, runs_c = 0;
    {
        // 20 verified (m=6, n=22, q=3) codes, l=2: members stall at size 1
        std::vector<std::uint64_t> seeds3;
        for (std::uint64_t s = 1; s <= 60 && seeds3.size() < 20; ++s)
            if (verifier::is_list_decoding(construct::random_code(6, 22, 3, s), 2).is_code)
                seeds3.push_back(s);
        ctx.expect(seeds3.size() == 20, "could not find 20 verified (6,22,3) codes");
        for (std::uint64_t s : seeds3) {
            const CodeMatrix C = construct::random_code(6, 22, 3, s);
            for (std::uint64_t as : {11ull, 22ull, 33ull, 44ull}) {
                adversary::AttackConfig cfg;
                cfg.epsilon = 0.3;
                cfg.iterations = 4;
                cfg.ensemble_size = 16;
                cfg.num_wt = 16;
                cfg.g_variant = coupon::GVariant::as_written;
                cfg.gamma = 0.0;
                cfg.gamma_dev = 10.0; // no deviation can reach gamma*q > q
                cfg.target = 3;       // l + 1
                cfg.seed = derive_seed(kMaster, {8, 3, s, as});
                auto out = adversary::run_attack(C, cfg);
                ++runs_c;
                if (out.status == adversary::AttackStatus::not_found)
                    ++not_found;
                else
                    ctx.fail("(6,22,3) code seed " + std::to_string(s) +
                             " produced status != not-found");
                record(C, std::move(out));
            }
        }

        // 5 verified (m=64, n=43, q=4) codes, l=5: members reach exactly l+1,
        // but every 6-subset of a verified code has a rainbow column
        const std::uint32_t n64 = construct::required_columns(64, 4, 5, 0.1);
        std::vector<std::uint64_t> seeds4;
        for (std::uint64_t s = 1; s <= 12 && seeds4.size() < 5; ++s)
            if (verifier::is_list_decoding(construct::random_code(64, n64, 4, s), 5).is_code)
                seeds4.push_back(s);
        ctx.expect(seeds4.size() == 5, "could not find 5 verified (64," +
                                           std::to_string(n64) + ",4) codes");
        for (std::uint64_t s : seeds4) {
            const CodeMatrix C = construct::random_code(64, n64, 4, s);
            for (std::uint64_t as : {1ull, 2ull, 3ull, 4ull}) {
                adversary::AttackConfig cfg;
                cfg.epsilon = 0.3;
                cfg.iterations = 9; // draws 2,0,1,0,1,0,1,0,1: size 6 at round 9
                cfg.ensemble_size = 16;
                cfg.num_wt = 16;
                cfg.g_variant = coupon::GVariant::as_written;
                cfg.gamma = 0.0;
                cfg.gamma_dev = 10.0;
                cfg.target = 6; // l + 1
                cfg.seed = derive_seed(kMaster, {8, 3, 64, s, as});
                auto out = adversary::run_attack(C, cfg);
                ++runs_c;
                if (out.status == adversary::AttackStatus::not_found)
                    ++not_found;
                else
                    ctx.fail("(64," + std::to_string(n64) + ",4) code seed " +
                             std::to_string(s) + " produced status != not-found");
                if (!out.transcript.rounds.empty() &&
                    out.transcript.rounds.back().member_size != 6)
                    ctx.fail("members did not reach size 6 on code seed " + std::to_string(s));
                record(C, std::move(out));
            }
        }
    }
    ctx.expect(not_found == 100 && runs_c == 100,
               "extract(target=l+1) on verified codes: " + std::to_string(not_found) + "/" +
                   std::to_string(runs_c) + " not-found; need 100/100");

    // extra randomized attacks so the soundness sweep sees diverse inputs
    std::uint32_t extra = 0;
    for (std::uint32_t i = 0; i < 30; ++i) {
        Rng rng(derive_seed(kMaster, {8, 1, i}));
        const auto m = static_cast<std::uint32_t>(8 + rng.below(41));
        const auto n = static_cast<std::uint32_t>(1 + rng.below(8));
        const auto q = static_cast<std::uint32_t>(3 + rng.below(6));
        const CodeMatrix C = construct::random_code(m, n, q, derive_seed(kMaster, {8, 1, i, 1}));
        adversary::AttackConfig cfg;
        cfg.epsilon = 0.2 + 0.4 * rng.unit();
        cfg.iterations = static_cast<std::uint32_t>(1 + rng.below(3));
        cfg.ensemble_size = static_cast<std::uint32_t>(8 + rng.below(25));
        cfg.num_wt = 32;
        cfg.g_variant = rng.below(2) ? coupon::GVariant::as_written
                                     : coupon::GVariant::cumulative;
        cfg.seed = derive_seed(kMaster, {8, 1, i, 2});
        try {
            auto out = adversary::run_attack(C, cfg);
            ++extra;
            record(C, std::move(out));
        } catch (const InfeasibleError&) {
        } catch (const coupon::PhaseSizeError&) {
        }
    }

    // (e) the q=6 benchmark must match its pilot-calibrated goldens per seed
    std::uint32_t golden_hits = 0;
    const auto& goldens = zelab_acceptance::golden_benchmark_runs();
    if (goldens.empty()) {
        ctx.fail("golden table is empty; regenerate with --emit-golden-8e");
    } else {
        const CodeMatrix B = benchmark_matrix();
        for (const auto& g : goldens) {
            auto out = run_benchmark_attack(g.seed, B);
            bool ok = (out.status == adversary::AttackStatus::found) == g.found &&
                      out.transcript.rounds.size() == 5;
            for (std::size_t r = 0; ok && r < 5; ++r) {
                ok = out.transcript.rounds[r].draws == g.draws[r] &&
                     out.transcript.rounds[r].member_size == g.sizes[r];
            }
            if (ok) {
                std::vector<std::uint32_t> rows;
                if (out.list)
                    for (row_t r : *out.list) rows.push_back(r);
                ok = rows == g.rows;
            }
            if (ok)
                ++golden_hits;
            else
                ctx.fail("benchmark seed " + std::to_string(g.seed) +
                         " deviates from its golden transcript");
            record(B, std::move(out));
        }
    }

    // (a) every found outcome must survive independent confirmation
    std::uint32_t found_checked = 0;
    // (d) the per-round invariants must hold on every transcript
    std::uint32_t rounds_checked = 0;
    for (std::size_t i = 0; i < g_runs.size(); ++i) {
        const auto& rec = g_runs[i];
        if (rec.out.status == adversary::AttackStatus::found) {
            ++found_checked;
            if (!rec.out.verified)
                ctx.fail("run " + std::to_string(i) + ": found but not self-verified");
            if (!rec.out.list) {
                ctx.fail("run " + std::to_string(i) + ": found without a list");
            } else {
                std::vector<row_t> rows(rec.out.list->begin(), rec.out.list->end());
                if (rows.size() < rec.out.target)
                    ctx.fail("run " + std::to_string(i) + ": list smaller than target");
                for (row_t r : rows)
                    if (r < 1 || r > rec.C->rows())
                        ctx.fail("run " + std::to_string(i) + ": list row out of range");
                if (primitive_has_rainbow(*rec.C, rows))
                    ctx.fail("run " + std::to_string(i) + ": extracted list has a rainbow column");
                if (!primitive_confusing_word(*rec.C, rows))
                    ctx.fail("run " + std::to_string(i) + ": no confusing output word exists");
            }
        }
        for (const auto& round : rec.out.transcript.rounds) {
            ++rounds_checked;
            if (!round.assert_member_sizes || !round.assert_pruned_images ||
                !round.assert_universe_log)
                ctx.fail("run " + std::to_string(i) + " round " + std::to_string(round.round) +
                         ": per-round invariant failed");
        }
    }

    std::ostringstream ss;
    ss << "a: " << found_checked << " found outcomes re-verified; b: " << constant_found
       << "/3 constant matrices in round 1; c: " << not_found
       << "/100 not-found on verified codes; d: " << rounds_checked
       << " rounds asserted; e: " << golden_hits << "/" << goldens.size()
       << " golden seeds match; " << extra << " extra randomized runs";
    ctx.info = ss.str();
}

// ---------------------------------------------------------------------------
// criterion 9: the stored capacity bounds reproduce the quoted intervals

void criterion_bounds_table(Ctx& ctx) {
    const auto b32 = bounds::known_bounds(3, 2);
    if (!b32) {
        ctx.fail("no stored bounds for (3,2)");
    } else {
        ctx.expect(std::abs(b32->lower - 0.085) < 5e-4, "(3,2) lower bound off");
        ctx.expect(std::abs(b32->upper - 0.585) < 5e-4, "(3,2) upper bound off");
    }
    const auto b43 = bounds::known_bounds(4, 3);
    if (!b43) {
        ctx.fail("no stored bounds for (4,3)");
    } else {
        ctx.expect(std::abs(b43->lower - 0.0473) < 5e-5, "(4,3) lower bound off");
        ctx.expect(std::abs(b43->upper - 0.3158) < 5e-5, "(4,3) upper bound off");
    }
    std::uint32_t thresholds = 0;
    for (std::uint32_t q : {2u, 3u, 10u, 100u, 4096u}) {
        const auto ell = static_cast<std::uint64_t>(std::ceil(q * std::log(double(q))));
        const auto b = bounds::known_bounds(q, ell);
        if (b && b->lower == 1.0 / q && b->upper == 1.0 / q)
            ++thresholds;
        else
            ctx.fail("threshold pair at q=" + std::to_string(q) + " is not exactly 1/q");
    }
    ctx.notef("[0.085,0.585], [0.0473,0.3158] reproduced; %u/5 threshold pairs exactly 1/q",
              thresholds);
}

// ---------------------------------------------------------------------------

int emit_golden_8e() {
    const CodeMatrix B = benchmark_matrix();
    std::printf(
        "// Golden per-seed outcomes for the q=6 attack benchmark.  The table is\n"
        "// pilot-calibrated: regenerate it by running\n"
        "//\n"
        "//     zelab_acceptance --emit-golden-8e > tests/acceptance/golden_attack.hpp\n"
        "//\n"
        "// and rebuilding.  An empty table makes the benchmark criterion fail, so a\n"
        "// stale or missing calibration is loud, never silent.\n"
        "#pragma once\n\n#include <array>\n#include <cstdint>\n#include <vector>\n\n"
        "namespace zelab_acceptance {\n\n"
        "struct GoldenRun {\n"
        "    std::uint64_t seed;\n"
        "    bool found;\n"
        "    std::array<std::uint64_t, 5> draws;    // per-round fresh rows drawn\n"
        "    std::array<std::uint32_t, 5> sizes;    // per-round member size\n"
        "    std::vector<std::uint32_t> rows;       // extracted list (empty if !found)\n"
        "};\n\n"
        "inline const std::vector<GoldenRun>& golden_benchmark_runs() {\n"
        "    static const std::vector<GoldenRun> runs = {\n");
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto out = run_benchmark_attack(seed, B);
        if (out.transcript.rounds.size() != 5) {
            std::fprintf(stderr, "seed %llu: expected 5 rounds, got %zu\n",
                         static_cast<unsigned long long>(seed), out.transcript.rounds.size());
            return 1;
        }
        std::printf("        {%llu, %s, {", static_cast<unsigned long long>(seed),
                    out.status == adversary::AttackStatus::found ? "true" : "false");
        for (std::size_t r = 0; r < 5; ++r)
            std::printf("%s%llu", r ? ", " : "",
                        static_cast<unsigned long long>(out.transcript.rounds[r].draws));
        std::printf("}, {");
        for (std::size_t r = 0; r < 5; ++r)
            std::printf("%s%llu", r ? ", " : "",
                        static_cast<unsigned long long>(out.transcript.rounds[r].member_size));
        std::printf("}, {");
        if (out.list) {
            bool first = true;
            for (row_t r : *out.list) {
                std::printf("%s%u", first ? "" : ", ", r);
                first = false;
            }
        }
        std::printf("}},\n");
    }
    std::printf("    };\n    return runs;\n}\n\n} // namespace zelab_acceptance\n");
    return 0;
}

struct Criterion {
    const char* name;
    void (*run)(Ctx&);
};

} // namespace

int main(int argc, char** argv) {
    if (argc > 1 && std::string(argv[1]) == "--emit-golden-8e") return emit_golden_8e();

    const std::array<Criterion, 9> criteria = {{
        {"verifier oracle equivalence", criterion_verifier_equivalence},
        {"exact minimum lengths", criterion_exact_min_n},
        {"probabilistic construction", criterion_probabilistic_construction},
        {"coupon expectation exactness", criterion_coupon_exactness},
        {"expectation upper bound", criterion_expectation_bound},
        {"list-size recurrence growth", criterion_list_size_recurrence},
        {"sampler checker agreement", criterion_sampler_checkers},
        {"adversary soundness and mechanics", criterion_adversary},
        {"capacity bounds table", criterion_bounds_table},
    }};

    std::printf("zelab acceptance gate\n");
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Ctx ctx;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            criteria[i].run(ctx);
        } catch (const std::exception& e) {
            ctx.fail(std::string("unhandled exception: ") + e.what());
        }
        const double secs = seconds_since(t0);
        const bool pass = ctx.errs.empty();
        std::printf("[%zu/9] %-36s %s  (%.2f s)%s%s\n", i + 1, criteria[i].name,
                    pass ? "PASS" : "FAIL", secs, ctx.info.empty() ? "" : "  -- ",
                    ctx.info.c_str());
        if (!pass) {
            ++failed;
            const std::size_t show = std::min<std::size_t>(ctx.errs.size(), 8);
            for (std::size_t e = 0; e < show; ++e)
                std::printf("      * %s\n", ctx.errs[e].c_str());
            if (ctx.errs.size() > show)
                std::printf("      * ... and %zu more\n", ctx.errs.size() - show);
        }
        std::fflush(stdout);
    }
    std::printf("%s: %d/9 criteria passed\n", failed == 0 ? "ACCEPTED" : "REJECTED",
                9 - failed);
    return failed;
}
