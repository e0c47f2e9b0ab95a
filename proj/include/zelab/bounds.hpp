#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "zelab/errors.hpp"

namespace zelab::bounds {

// Interval of known bounds on the list-of-l capacity of the q/(q-1) channel:
// the supremum of (1/n)*log2(m/l) over l-list-decoding codes.
struct CapacityInterval {
    std::uint32_t q = 0;
    std::uint64_t ell = 0;
    double lower = 0;
    double upper = 0;
    std::string source;
};

// Stored intervals for the handful of parameter pairs with published
// constants; nullopt for everything else.
inline std::optional<CapacityInterval> known_bounds(std::uint32_t q, std::uint64_t ell) {
    if (q == 3 && ell == 2) {
        return CapacityInterval{3, 2, std::log2(3.0) - 1.5, std::log2(3.0) - 1.0,
                                "Elias (1988)"};
    }
    if (q == 4 && ell == 3) {
        return CapacityInterval{4, 3, std::log2(32.0 / 29.0) / 3.0, 6.0 / 19.0,
                                "Koerner-Marton (1988) lower; "
                                "Dalai-Guruswami-Radhakrishnan (2016) upper"};
    }
    const double qd = static_cast<double>(q);
    if (q >= 2 && ell == static_cast<std::uint64_t>(std::ceil(qd * std::log(qd)))) {
        return CapacityInterval{q, ell, 1.0 / qd, 1.0 / qd,
                                "exact at the coupon-collector list threshold ceil(q ln q)"};
    }
    return std::nullopt;
}

// Functional form of the superpolynomial length lower bound for list sizes
// eps*q*ln q with eps < 1/6: exp(q^(1-6*eps)/8) * log2(m).  Implicit
// constants are out of scope; this is the shape, for report annotation.
inline double length_lower_bound_form(std::uint64_t m, std::uint32_t q, double epsilon) {
    if (m < 1) throw DomainError("length_lower_bound_form: m must be at least 1");
    if (q < 2) throw DomainError("length_lower_bound_form: q must be at least 2");
    if (!(epsilon > 0) || !(epsilon < 1.0 / 6.0))
        throw DomainError("length_lower_bound_form: epsilon must lie in (0, 1/6)");
    const double qd = static_cast<double>(q);
    return std::exp(std::pow(qd, 1.0 - 6.0 * epsilon) / 8.0) *
           std::log2(static_cast<double>(m));
}

// Largest list size covered by the linear-regime capacity results:
// (e/(e-1) - eps) * q.  Above it, and below the coupon-collector threshold,
// is the regime the superpolynomial bound addresses.
inline double linear_list_threshold(std::uint32_t q, double epsilon) {
    if (q < 2) throw DomainError("linear_list_threshold: q must be at least 2");
    if (!(epsilon > 0)) throw DomainError("linear_list_threshold: epsilon must be positive");
    const double eta = std::exp(1.0) / (std::exp(1.0) - 1.0);
    return (eta - epsilon) * static_cast<double>(q);
}

} // namespace zelab::bounds
