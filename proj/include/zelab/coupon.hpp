#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "zelab/errors.hpp"
#include "zelab/rng.hpp"
#include "zelab/types.hpp"

namespace zelab::coupon {

// ---------------------------------------------------------------------------
// Phased coupon-collector process over the alphabet [q]: in phase i, a_i
// independent symbols are drawn from pmf_i; the quantity of interest is the
// expected number of distinct symbols collected across all phases.
// ---------------------------------------------------------------------------

struct SymbolPhase {
    std::uint64_t draws;     // a_i >= 1
    std::vector<double> pmf; // pmf[s-1] = probability of symbol s
};

class PhaseEnsembleSpec {
public:
    explicit PhaseEnsembleSpec(std::uint32_t q) : q_(q) {
        if (q < 1) throw DomainError("PhaseEnsembleSpec: q must be positive");
    }

    std::uint32_t alphabet_size() const noexcept { return q_; }
    std::size_t phase_count() const noexcept { return phases_.size(); }
    const std::vector<SymbolPhase>& phases() const noexcept { return phases_; }

    std::uint64_t total_draws() const noexcept {
        std::uint64_t a = 0;
        for (const auto& p : phases_) a += p.draws;
        return a;
    }

    void append_phase(std::uint64_t draws, std::vector<double> pmf) {
        if (draws < 1) throw DomainError("PhaseEnsembleSpec: draw count must be at least 1");
        if (pmf.size() != q_) throw DomainError("PhaseEnsembleSpec: pmf must have q entries");
        double sum = 0, comp = 0;
        for (double w : pmf) {
            if (w < 0 || !std::isfinite(w))
                throw DomainError("PhaseEnsembleSpec: pmf entries must be finite and nonnegative");
            double y = w - comp, t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        if (std::fabs(sum - 1.0) > 1e-12)
            throw DomainError("PhaseEnsembleSpec: pmf must sum to 1 within 1e-12");
        phases_.push_back(SymbolPhase{draws, std::move(pmf)});
    }

private:
    std::uint32_t q_;
    std::vector<SymbolPhase> phases_;
};

// Common mass functions on [q].
inline std::vector<double> uniform_pmf(std::uint32_t q) {
    if (q < 1) throw DomainError("uniform_pmf: q must be positive");
    return std::vector<double>(q, 1.0 / q);
}

// pmf(s) proportional to s^(-s_param).
inline std::vector<double> zipf_pmf(std::uint32_t q, double s_param) {
    if (q < 1) throw DomainError("zipf_pmf: q must be positive");
    if (!std::isfinite(s_param)) throw DomainError("zipf_pmf: exponent must be finite");
    std::vector<double> w(q);
    double sum = 0;
    for (std::uint32_t s = 1; s <= q; ++s) {
        w[s - 1] = std::pow(static_cast<double>(s), -s_param);
        sum += w[s - 1];
    }
    for (double& x : w) x /= sum;
    return w;
}

inline std::vector<double> point_pmf(std::uint32_t q, symbol_t x) {
    if (q < 1) throw DomainError("point_pmf: q must be positive");
    if (x < 1 || x > q) throw DomainError("point_pmf: symbol out of range");
    std::vector<double> w(q, 0.0);
    w[x - 1] = 1.0;
    return w;
}

// Expected distinct-coupon count after a i.i.d. uniform probes into [q]:
// mu_cc_q(a) = q(1 - exp(-a/q)).
inline double mu_cc(double q, double a) {
    if (q < 1) throw DomainError("mu_cc: q must be at least 1");
    if (a < 0) throw DomainError("mu_cc: a must be nonnegative");
    return q * (-std::expm1(-a / q));
}

// E[|A_1 u ... u A_k|] = sum_x (1 - prod_i (1 - pi_i(x))^{a_i}), computed
// exactly.  (1-p)^a goes through exp(a*log1p(-p)) so tiny p and huge a do
// not lose mass to cancellation.
inline double exact_phased_expectation(const PhaseEnsembleSpec& spec) {
    const std::uint32_t q = spec.alphabet_size();
    double total = 0;
    for (std::uint32_t x = 0; x < q; ++x) {
        double log_miss = 0;
        for (const auto& ph : spec.phases()) {
            const double p = ph.pmf[x];
            if (p >= 1.0) {
                log_miss = -std::numeric_limits<double>::infinity();
                break;
            }
            log_miss += static_cast<double>(ph.draws) * std::log1p(-p);
        }
        total += -std::expm1(log_miss);
    }
    return total;
}

struct McResult {
    double mean;
    double std_error;
};

namespace detail {

// Inverse-CDF sampling over a fixed cumulative table.
class CumulativeSampler {
public:
    explicit CumulativeSampler(const std::vector<double>& pmf) : cum_(pmf.size()) {
        double acc = 0;
        for (std::size_t i = 0; i < pmf.size(); ++i) {
            acc += pmf[i];
            cum_[i] = acc;
        }
    }

    std::uint32_t draw(Rng& rng) const {
        const double u = rng.unit();
        auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
        if (it == cum_.end()) --it; // guards the top edge against rounding
        return static_cast<std::uint32_t>(it - cum_.begin()); // 0-based symbol index
    }

private:
    std::vector<double> cum_;
};

struct McAccumulator {
    double sum = 0;
    double sum_sq = 0;
};

inline McAccumulator mc_worker(const PhaseEnsembleSpec& spec,
                               const std::vector<CumulativeSampler>& samplers,
                               std::uint64_t trials, std::uint64_t seed) {
    const std::uint32_t q = spec.alphabet_size();
    Rng rng(seed);
    McAccumulator acc;
    std::vector<std::uint8_t> seen(q);
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::fill(seen.begin(), seen.end(), 0);
        std::uint32_t distinct = 0;
        for (std::size_t i = 0; i < spec.phases().size(); ++i) {
            const std::uint64_t a = spec.phases()[i].draws;
            for (std::uint64_t d = 0; d < a; ++d) {
                const std::uint32_t x = samplers[i].draw(rng);
                if (!seen[x]) {
                    seen[x] = 1;
                    ++distinct;
                }
            }
        }
        const double v = distinct;
        acc.sum += v;
        acc.sum_sq += v * v;
    }
    return acc;
}

} // namespace detail

// Simulates the phased process.  Deterministic in (seed, trials, workers):
// trials are split evenly across workers, each with a derived seed, and
// partial sums are merged in worker order.
inline McResult mc_phased_expectation(const PhaseEnsembleSpec& spec, std::uint64_t trials,
                                      std::uint64_t seed, unsigned workers = 1) {
    if (trials < 1) throw DomainError("mc_phased_expectation: trials must be at least 1");
    if (workers < 1) workers = 1;
    if (workers > trials) workers = static_cast<unsigned>(trials);

    std::vector<detail::CumulativeSampler> samplers;
    samplers.reserve(spec.phase_count());
    for (const auto& ph : spec.phases()) samplers.emplace_back(ph.pmf);

    std::vector<detail::McAccumulator> parts(workers);
    if (workers == 1) {
        parts[0] = detail::mc_worker(spec, samplers, trials,
                                     derive_seed(seed, {stream::coupon, 0}));
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t share = trials / workers + (w < trials % workers ? 1 : 0);
            pool.emplace_back([&, w, share] {
                parts[w] = detail::mc_worker(spec, samplers, share,
                                             derive_seed(seed, {stream::coupon, w}));
            });
        }
        for (auto& th : pool) th.join();
    }

    double sum = 0, sum_sq = 0;
    for (const auto& p : parts) {
        sum += p.sum;
        sum_sq += p.sum_sq;
    }
    const double n = static_cast<double>(trials);
    const double mean = sum / n;
    double var = 0;
    if (trials > 1) var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1));
    return McResult{mean, std::sqrt(var / n)};
}

// ---------------------------------------------------------------------------
// Upper bound on the exact expectation via a heavy-symbol set B: per phase,
// B_i holds the ceil(q^{1-2*eps-lambda}) heaviest symbols; outside B every
// mass is small enough that 1-p >= exp(-p(1+2/q^{1-2*eps-lambda})), and the
// AM-GM step yields |B| + q - q*exp(-(1+2*q^{-(1-2*eps-lambda)})*(a/q)).
// ---------------------------------------------------------------------------

struct BoundParams {
    double epsilon; // in (0, 1/3)
    double lambda;  // in (0, epsilon)
};

struct BoundReport {
    double bound;  // the displayed upper bound
    double exact;  // exact_phased_expectation(spec)
    double slack;  // bound - exact
    bool holds;    // exact <= bound
    double b_size; // |B| = k * ceil(q^{1-2*eps-lambda})
};

inline BoundReport expectation_upper_bound(const PhaseEnsembleSpec& spec,
                                           const BoundParams& params) {
    const double eps = params.epsilon, lam = params.lambda;
    if (!(eps > 0 && eps < 1.0 / 3.0))
        throw DomainError("expectation_upper_bound: epsilon must lie in (0, 1/3)");
    if (!(lam > 0 && lam < eps))
        throw DomainError("expectation_upper_bound: lambda must lie in (0, epsilon)");

    const double q = spec.alphabet_size();
    const double a = static_cast<double>(spec.total_draws());
    const double k = static_cast<double>(spec.phase_count());
    if (a > eps * q * std::log(q))
        throw DomainError("expectation_upper_bound: hypothesis violated: total draws a exceed "
                          "epsilon*q*ln(q) (a = " +
                          std::to_string(a) + ")");
    if (k > std::exp(1.0) * std::pow(q, eps))
        throw DomainError("expectation_upper_bound: hypothesis violated: phase count k exceeds "
                          "e*q^epsilon (k = " +
                          std::to_string(k) + ")");

    const double expo = 1.0 - 2.0 * eps - lam;
    const double b_size = k * std::ceil(std::pow(q, expo));
    const double bound = b_size + q - q * std::exp(-(1.0 + 2.0 * std::pow(q, -expo)) * (a / q));
    const double exact = exact_phased_expectation(spec);
    return BoundReport{bound, exact, bound - exact, exact <= bound, b_size};
}

// ---------------------------------------------------------------------------
// Per-round list growth: l_1 = q, l_{i+1} = q - mu_cc_q(l_{<=i}); the closed
// form of the step is q*exp(-l_{<=i}/q).
// ---------------------------------------------------------------------------

struct EllSequence {
    std::vector<double> ell;    // l_1..l_k
    std::vector<double> prefix; // l_{<=1}..l_{<=k}
};

inline EllSequence ell_sequence(double q, std::uint32_t k) {
    if (q < 2) throw DomainError("ell_sequence: q must be at least 2");
    if (k < 1) throw DomainError("ell_sequence: k must be at least 1");
    EllSequence out;
    out.ell.reserve(k);
    out.prefix.reserve(k);
    double prefix = 0;
    for (std::uint32_t i = 0; i < k; ++i) {
        const double ell = i == 0 ? q : q - mu_cc(q, prefix);
        prefix += ell;
        out.ell.push_back(ell);
        out.prefix.push_back(prefix);
    }
    return out;
}

// Closed form of the same step, for cross-checking the recurrence.
inline double ell_step_closed_form(double q, double prefix) {
    return q * std::exp(-prefix / q);
}

// ---------------------------------------------------------------------------
// Phase sizes g_i for the iterated attack.  Two readings of the recurrence
// g_{i+1} = q - mu_cc_q(.) - (i+1)*gamma*q - 2 are supported: `as_written`
// feeds the previous phase size g_i into mu_cc; `cumulative` feeds the
// running total g_{<=i} (consistent with how the l-sequence accumulates).
// Values are kept as reals; callers that need integers floor them.
// ---------------------------------------------------------------------------

enum class GVariant { cumulative, as_written };

inline const char* to_string(GVariant v) {
    return v == GVariant::cumulative ? "cumulative" : "as-written";
}

class PhaseSizeError : public std::runtime_error {
public:
    PhaseSizeError(std::uint32_t index, double value)
        : std::runtime_error("phase size g_" + std::to_string(index) + " is nonpositive (" +
                             std::to_string(value) + ")"),
          index_(index),
          value_(value) {}

    std::uint32_t index() const noexcept { return index_; } // 1-based
    double value() const noexcept { return value_; }

private:
    std::uint32_t index_;
    double value_;
};

struct PhaseSizes {
    std::vector<double> g;      // g_1..g_k
    std::vector<double> prefix; // g_{<=1}..g_{<=k}
    double total;               // g_{<=k}
};

inline PhaseSizes phase_sizes(double q, double gamma, std::uint32_t k, GVariant variant) {
    if (q < 3) throw DomainError("phase_sizes: q must be at least 3");
    if (gamma < 0) throw DomainError("phase_sizes: gamma must be nonnegative");
    if (k < 1) throw DomainError("phase_sizes: k must be at least 1");
    PhaseSizes out;
    out.g.reserve(k);
    out.prefix.reserve(k);
    double prefix = 0;
    for (std::uint32_t i = 0; i < k; ++i) {
        double g;
        if (i == 0) {
            g = q - 2;
        } else {
            const double arg = variant == GVariant::cumulative ? prefix : out.g.back();
            g = q - mu_cc(q, arg) - (i + 1) * gamma * q - 2;
        }
        if (g <= 0) throw PhaseSizeError(i + 1, g);
        prefix += g;
        out.g.push_back(g);
        out.prefix.push_back(prefix);
    }
    out.total = prefix;
    return out;
}

} // namespace zelab::coupon
