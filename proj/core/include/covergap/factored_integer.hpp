#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace covergap {

// A positive integer held as its prime factorization.  The empty map is 1.
struct FactoredInteger {
    std::map<std::uint64_t, std::uint32_t> factors;

    mpz_class value() const;

    // p-adic valuation; 0 when p is not a factor.
    std::uint32_t valuation(std::uint64_t p) const;

    bool operator==(const FactoredInteger& other) const = default;

    FactoredInteger lcm_with(const FactoredInteger& other) const;

    // Rendering like "2^4 * 3^2 * 5 * 7"; "1" for the empty product.
    std::string to_string() const;
};

// All divisors d of F with lo <= d <= hi, ascending, no duplicates.
// Enumeration prunes any branch whose partial product already exceeds hi.
std::vector<std::uint64_t> divisors_in_interval(const FactoredInteger& F,
                                                std::uint64_t lo,
                                                std::uint64_t hi);

} // namespace covergap
