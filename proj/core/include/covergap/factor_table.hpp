#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "covergap/factored_integer.hpp"

namespace covergap {

// Largest/smallest prime factor tables for 1..limit.
//
// Convention: lpf(1) = spf(1) = 1.  For n >= 2 both entries are prime
// divisors of n.  Construction is single-threaded; afterwards the table is
// immutable and safe to share across threads.
class FactorTable {
public:
    static FactorTable build(std::uint64_t limit);

    // Binary cache round-trip.  The format is fixed: the bytes "CGSV1",
    // the limit as an 8-byte little-endian integer, then the lpf and spf
    // arrays for n = 1..limit as 4-byte little-endian entries.
    void save(const std::filesystem::path& path) const;
    static std::optional<FactorTable> try_load(const std::filesystem::path& path);

    // Loads `path` when it holds a cached table with at least `limit`
    // entries; otherwise builds fresh and, when a path is given, saves.
    static FactorTable load_or_build(std::uint64_t limit,
                                     const std::optional<std::filesystem::path>& path);

    std::uint64_t limit() const { return limit_; }

    std::uint64_t largest_prime_factor(std::uint64_t n) const;
    std::uint64_t smallest_prime_factor(std::uint64_t n) const;
    bool is_prime(std::uint64_t n) const;

    std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) const;

    FactoredInteger factorize(std::uint64_t n) const;

private:
    FactorTable() = default;

    std::uint64_t limit_ = 0;
    std::vector<std::uint32_t> lpf_; // index 0 unused
    std::vector<std::uint32_t> spf_;
};

} // namespace covergap
