#include "doctest.h"

#include <cstdint>
#include <vector>

#include "covergap/factored_integer.hpp"
#include "covergap/lcm_profile.hpp"
#include "covergap/rational.hpp"

#include "fixtures.hpp"
#include "test_support.hpp"

using namespace covergap;

TEST_CASE("lemma2_exponent maximizes p^a (p+1) <= d") {
    CHECK(lemma2_exponent(2, 60) == 4);   // 16*3 = 48 <= 60 < 96
    CHECK(lemma2_exponent(3, 90) == 2);   // 9*4 = 36 <= 90 < 108
    CHECK(lemma2_exponent(7, 70) == 1);   // 7*8 = 56 <= 70 < 392
    CHECK(lemma2_exponent(11, 131) == 0); // 11*12 = 132 > 131
    CHECK(lemma2_exponent(11, 132) == 1);
    CHECK(lemma2_exponent(23, 600) == 1);
    CHECK(lemma2_exponent(2, 2) == 0);
}

TEST_CASE("lemma1_exponent matches a direct multiple count") {
    auto count_multiples = [](std::uint64_t q, std::uint64_t lo, std::uint64_t hi) {
        std::uint64_t c = 0;
        for (std::uint64_t n = lo; n <= hi; ++n)
            if (n % q == 0) ++c;
        return c;
    };
    for (std::uint64_t m : {6ULL, 14ULL, 19ULL, 33ULL, 95ULL}) {
        for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
            std::uint32_t a = lemma1_exponent(p, m, 10);
            CAPTURE(m);
            CAPTURE(p);
            std::uint64_t q = 1;
            for (std::uint32_t i = 0; i < a; ++i) q *= p;
            CHECK(count_multiples(q, m, 10 * m) >= p + 1);
            CHECK(count_multiples(q * p, m, 10 * m) < p + 1);
        }
    }
}

TEST_CASE("the admission gate follows the counting rule where the rules diverge") {
    // At these m the window holds exactly p multiples of p, one short of the
    // p+1 the counting rule demands, while p*(p+1) <= 10m would admit the
    // prime.  The profile keeps the prime out; the prover reports the
    // divergence informationally.
    struct Divergence {
        std::uint64_t m, p;
    };
    const Divergence rows[] = {{14, 11}, {19, 13}, {41, 19}, {59, 23},
                               {95, 29}, {107, 31}, {108, 31}};
    for (const auto& row : rows) {
        CAPTURE(row.m);
        CHECK(lemma1_exponent(row.p, row.m, 10) == 0);
        CHECK(lemma2_exponent(row.p, 10 * row.m) == 1);
        FactoredInteger L = compute_L(row.m, 10, test_support::small_table());
        CHECK(L.valuation(row.p) == 0);
    }

    // The counting rule never admits more than the product rule.
    for (std::uint64_t m = 3; m <= 400; ++m)
        for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL})
            CHECK(lemma1_exponent(p, m, 10) <= lemma2_exponent(p, 10 * m));
}

TEST_CASE("compute_L reproduces the reference profiles") {
    const FactorTable& table = test_support::small_table();
    for (const fixtures::ProfileBlock& block : fixtures::profile_blocks()) {
        for (std::uint64_t m = block.m_lo; m <= block.m_hi; ++m) {
            if (!fixtures::window_sum_reaches_one(m)) continue;
            FactoredInteger expected;
            for (auto [p, e] : block.factors) expected.factors[p] = e;
            CAPTURE(m);
            REQUIRE(compute_L(m, 10, table) == expected);
        }
    }
}

TEST_CASE("profile primes require p+1 window multiples") {
    const FactorTable& table = test_support::small_table();
    FactoredInteger L = compute_L(20, 10, table);
    // 17 has only 10 multiples in [20, 200], fewer than 18, so it stays out.
    CHECK(L.valuation(17) == 0);
    CHECK(L.valuation(13) == 1);
}

TEST_CASE("divisors_in_interval agrees with a divisibility scan") {
    const FactorTable& table = test_support::small_table();
    FactoredInteger F = table.factorize(5040);
    std::vector<std::uint64_t> expected;
    for (std::uint64_t d = 6; d <= 60; ++d)
        if (5040 % d == 0) expected.push_back(d);
    CHECK(divisors_in_interval(F, 6, 60) == expected);

    CHECK(divisors_in_interval(F, 5041, 6000).empty());
    std::vector<std::uint64_t> all = divisors_in_interval(F, 1, 5040);
    CHECK(all.size() == 60); // d(5040)
    CHECK(all.front() == 1);
    CHECK(all.back() == 5040);
}

TEST_CASE("divisor_reciprocal_sum matches its divisor list") {
    const FactorTable& table = test_support::small_table();
    FactoredInteger F = compute_L(6, 10, table);
    CHECK(F.value() == 5040);
    Rational direct = 0;
    for (std::uint64_t d : divisors_in_interval(F, 6, 60))
        direct += Rational(1, static_cast<unsigned long>(d));
    CHECK(divisor_reciprocal_sum(F, 6, 60) == direct);
}

TEST_CASE("divisor sums match the quoted case openings") {
    const FactorTable& table = test_support::small_table();
    Rational tolerance = rat(1, 1000000);
    for (const fixtures::DivisorSumRef& row : fixtures::kDivisorSums) {
        FactoredInteger L = compute_L(row.m, 10, table);
        Rational sum = divisor_reciprocal_sum(L, row.m, 10 * row.m);
        CAPTURE(row.m);
        CHECK(decimal_distance(sum, row.printed) < tolerance);
        CHECK(sum >= 1);
    }
}
