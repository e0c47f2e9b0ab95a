// Probabilistic construction: exact rainbow probabilities, union-bound
// column counts, seeded random codes, and the exact minimum-length search.
#include <catch2/catch_amalgamated.hpp>

#include <zelab/construct.hpp>
#include <zelab/errors.hpp>
#include <zelab/rng.hpp>
#include <zelab/verifier.hpp>

#include <cmath>

using namespace zelab;
using namespace zelab::construct;
using zelab::verifier::is_list_decoding;

constexpr std::uint64_t kBudget = 10'000'000;

TEST_CASE("rainbow probability exact values") {
    CHECK(rainbow_probability_exact(2, 1) == BigRat(1, 2));
    CHECK(rainbow_probability_exact(3, 2) == BigRat(2, 9));
    CHECK(rainbow_probability_exact(5, 3) == BigRat(0));
    CHECK(rainbow_probability_exact(4, 5) == BigRat(195, 512));
    CHECK(rainbow_probability(2, 1) == Catch::Approx(0.5));
    CHECK(rainbow_probability(4, 5) == Catch::Approx(195.0 / 512.0).epsilon(1e-12));
}

TEST_CASE("rainbow probability is a probability and increases with draws") {
    for (std::uint32_t q = 2; q <= 6; ++q) {
        double prev = -1.0;
        for (std::uint32_t ell = 1; ell <= 20; ++ell) {
            const double p = rainbow_probability(q, ell);
            CHECK(p >= 0.0);
            CHECK(p <= 1.0);
            CHECK(p >= prev);
            prev = p;
        }
    }
}

TEST_CASE("required columns on known instances") {
    CHECK(required_columns(2, 2, 1, 0.999) == 1);
    CHECK(required_columns(4, 2, 1, 0.999) == 3);
    CHECK(required_columns(6, 3, 2, 0.1) == 22);
    CHECK(required_columns(64, 4, 5, 0.1) == 43);
    // m <= l: no subsets to worry about, one column always suffices
    CHECK(required_columns(3, 4, 3, 0.5) == 1);
}

TEST_CASE("required columns rejects bad parameters") {
    CHECK_THROWS_AS(required_columns(4, 2, 1, 0.0), DomainError);
    CHECK_THROWS_AS(required_columns(4, 2, 1, 1.0), DomainError);
    CHECK_THROWS_AS(required_columns(4, 2, 1, -0.5), DomainError);
    // l+1 < q makes the rainbow probability zero: no column count works
    CHECK_THROWS_AS(required_columns(6, 5, 3, 0.1), DomainError);
}

TEST_CASE("required columns satisfies its defining inequality tightly") {
    const std::uint32_t m = 6, q = 3, ell = 2;
    const double tf = 0.1;
    const std::uint64_t n = required_columns(m, q, ell, tf);
    const BigRat p = rainbow_probability_exact(q, ell);
    const BigRat miss = BigRat(1) - p;
    const BigInt subsets = binomial(m, ell + 1);
    const BigRat budget = BigRat(tf) / BigRat(subsets);
    CHECK(pow_rational(miss, n) <= budget);
    REQUIRE(n >= 2);
    CHECK_FALSE(pow_rational(miss, n - 1) <= budget);
}

TEST_CASE("random codes are seed-deterministic with in-range entries") {
    const CodeMatrix a = random_code(20, 10, 5, 99);
    const CodeMatrix b = random_code(20, 10, 5, 99);
    const CodeMatrix c = random_code(20, 10, 5, 100);
    CHECK(a == b);
    CHECK_FALSE(a == c);
    for (row_t r = 1; r <= 20; ++r)
        for (col_t h = 1; h <= 10; ++h) {
            CHECK(a.at(r, h) >= 1);
            CHECK(a.at(r, h) <= 5);
        }
}

TEST_CASE("random code symbols are roughly uniform") {
    const std::uint32_t q = 4;
    const CodeMatrix c = random_code(100, 100, q, 2024);
    std::vector<double> count(q + 1, 0.0);
    for (row_t r = 1; r <= 100; ++r)
        for (col_t h = 1; h <= 100; ++h) ++count[c.at(r, h)];
    const double n = 100.0 * 100.0;
    const double p = 1.0 / q;
    const double sigma = std::sqrt(n * p * (1 - p));
    for (symbol_t s = 1; s <= q; ++s)
        CHECK(std::abs(count[s] - n * p) <= 4.0 * sigma);
}

TEST_CASE("minimum length search on solved instances") {
    const MinNResult r1 = search_min_n(3, 3, 2, kBudget);
    CHECK(r1.status == MinNStatus::found);
    CHECK(r1.n == 1);

    // distinct binary rows: n = ceil(log2 m)
    const std::uint32_t expected[] = {0, 0, 1, 2, 2, 3, 3, 3, 3};
    for (std::uint32_t m = 2; m <= 8; ++m) {
        const MinNResult r = search_min_n(m, 2, 1, kBudget);
        REQUIRE(r.status == MinNStatus::found);
        CHECK(r.n == expected[m]);
    }

    // trivial list size: a single column suffices when m <= l
    const MinNResult tiny = search_min_n(3, 5, 4, kBudget);
    CHECK(tiny.status == MinNStatus::found);
    CHECK(tiny.n == 1);
}

TEST_CASE("minimum length search flags infeasible alphabets") {
    // m > l and l+1 < q: no finite length works
    const MinNResult r = search_min_n(4, 5, 2, kBudget);
    CHECK(r.status == MinNStatus::infeasible);
    CHECK(r.n == 0);
    CHECK_FALSE(r.example.has_value());
}

TEST_CASE("minimum length search respects its node budget") {
    const MinNResult r = search_min_n(8, 2, 1, 3);
    CHECK(r.status == MinNStatus::unknown);
    CHECK(r.nodes <= 10);  // stops promptly once the budget trips
}

TEST_CASE("search examples verify and search is monotone") {
    for (std::uint32_t m = 2; m <= 5; ++m) {
        for (std::uint32_t q = 2; q <= 3; ++q) {
            std::uint64_t prev = 0;
            for (std::uint32_t ell = 1; ell < m; ++ell) {
                if (m > ell && ell + 1 < q) continue;
                const MinNResult r = search_min_n(m, q, ell, kBudget);
                REQUIRE(r.status == MinNStatus::found);
                REQUIRE(r.example.has_value());
                CHECK(r.example->rows() == m);
                CHECK(r.example->cols() == r.n);
                CHECK(is_list_decoding(*r.example, ell).is_code);
                // larger list size never needs more columns
                if (prev != 0) CHECK(r.n <= prev);
                prev = r.n;
            }
        }
    }

    // more rows never need fewer columns (fixed q=2, l=1)
    std::uint64_t last = 1;
    for (std::uint32_t m = 2; m <= 10; ++m) {
        const MinNResult r = search_min_n(m, 2, 1, kBudget);
        REQUIRE(r.status == MinNStatus::found);
        CHECK(r.n >= last);
        last = r.n;
    }
}

TEST_CASE("search agrees with the plain brute-force oracle on n(4,3,2)") {
    const MinNResult r = search_min_n(4, 3, 2, kBudget);
    REQUIRE(r.status == MinNStatus::found);
    CHECK(r.n == 2);
    REQUIRE(r.example.has_value());
    CHECK(is_list_decoding(*r.example, 2).is_code);
}
