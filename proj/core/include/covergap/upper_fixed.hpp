#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include <gmpxx.h>

namespace covergap {

// Fixed-point accumulator on the grid 2^-96 that certifies an UPPER bound
// on a sum of reciprocals: every 1/n is rounded up to the grid, so
//
//     true_sum <= value * 2^-96 < true_sum + term_count * 2^-96.
//
// The grid leaves 32 integer bits, far more than the sums of interest
// (all below 2).  96 fractional bits keep the accumulated slack of the
// largest scan (< 6e6 terms) under 1e-21, orders of magnitude below the
// smallest margin the certificates rely on (~1e-7).
class UpperFixed {
public:
    UpperFixed() = default;

    static UpperFixed zero() { return {}; }

    // Reconstructs an accumulator from its raw fixed-point word and term
    // count.  The caller is responsible for the upper-bound invariant.
    static UpperFixed from_raw(unsigned __int128 value, std::uint64_t terms);

    // Adds ceil(2^96 / n).
    void add_reciprocal(std::uint64_t n);

    // Merges another accumulator (error bounds add).
    UpperFixed& operator+=(const UpperFixed& other);

    // True certifies the underlying sum is < 1.  (False does not certify
    // the converse; borderline callers re-check exactly.)
    bool less_than_one() const;

    unsigned __int128 raw() const { return value_; }
    std::uint64_t term_count() const { return terms_; }

    // value * 2^-96 in lowest terms.
    std::pair<mpz_class, mpz_class> as_fraction() const;

    // Truncated decimal rendering of value * 2^-96.
    std::string decimal_string(int digits = 16) const;

private:
    unsigned __int128 value_ = 0;
    std::uint64_t terms_ = 0;
};

} // namespace covergap
