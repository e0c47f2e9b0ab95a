#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "zelab/errors.hpp"
#include "zelab/types.hpp"

namespace zelab {

// One phase of a phased process over rows: `draws` i.i.d. picks from the
// mass function `weights` (aligned with the universe's sorted row order).
struct RowPhase {
    std::uint64_t draws;
    std::vector<double> weights;
};

// D_1^{a_1} v D_2^{a_2} v ... over a fixed row universe: per phase, a_i
// independent draws from pi_i; the object of interest is the union of all
// drawn rows.  Zero phases is the empty distribution (always draws the
// empty set).
class PhasedDistribution {
public:
    PhasedDistribution() = default;
    explicit PhasedDistribution(RowSubset universe) : universe_(std::move(universe)) {}

    const RowSubset& universe() const noexcept { return universe_; }
    std::size_t phase_count() const noexcept { return phases_.size(); }
    const RowPhase& phase(std::size_t i) const { return phases_.at(i); }
    const std::vector<RowPhase>& phases() const noexcept { return phases_; }

    std::uint64_t total_draws() const noexcept {
        std::uint64_t a = 0;
        for (const auto& p : phases_) a += p.draws;
        return a;
    }

    // Mass function given over the whole universe, in universe order.
    void append_phase(std::uint64_t draws, std::vector<double> weights) {
        if (draws < 1) throw DomainError("PhasedDistribution: draw count must be at least 1");
        if (weights.size() != universe_.size())
            throw DomainError("PhasedDistribution: weight vector does not match universe size");
        double sum = 0, comp = 0; // Kahan: universes can hold many rows
        for (double w : weights) {
            if (w < 0 || !std::isfinite(w))
                throw DomainError("PhasedDistribution: weights must be finite and nonnegative");
            double y = w - comp, t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        if (std::fabs(sum - 1.0) > 1e-12)
            throw DomainError("PhasedDistribution: phase mass must sum to 1 within 1e-12");
        phases_.push_back(RowPhase{draws, std::move(weights)});
    }

    // Uniform over `support` (a subset of the universe), zero elsewhere.
    void append_uniform_phase(std::uint64_t draws, const RowSubset& support) {
        if (support.empty()) throw DomainError("PhasedDistribution: empty phase support");
        std::vector<double> w(universe_.size(), 0.0);
        const double p = 1.0 / static_cast<double>(support.size());
        std::size_t u = 0;
        for (row_t r : support) {
            while (u < universe_.size() && universe_[u] < r) ++u;
            if (u == universe_.size() || universe_[u] != r)
                throw DomainError("PhasedDistribution: phase support outside universe");
            w[u] = p;
        }
        phases_.push_back(RowPhase{draws, std::move(w)});
    }

private:
    RowSubset universe_;
    std::vector<RowPhase> phases_;
};

} // namespace zelab
