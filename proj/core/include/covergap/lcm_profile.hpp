#pragma once

#include <cstdint>

#include "covergap/factor_table.hpp"
#include "covergap/factored_integer.hpp"
#include "covergap/rational.hpp"

namespace covergap {

// The lcm of a covering's moduli constrains which moduli can appear at all:
// a congruence class modulo p^a covers density 1/p^a, and with moduli
// confined to [m, km] the class can only be assembled from multiples of
// p^a in that window.  These helpers derive the largest lcm profile
// compatible with the window, the divisor multiset it admits, and the
// reciprocal sum of that multiset.

// Largest a >= 0 with p^a * (p+1) <= d.  A modulus divisible by p^(a+1)
// would need p+1 distinct multiples of p^(a+1) inside [1, d], which do not
// fit; such congruences can be discarded.
std::uint32_t lemma2_exponent(std::uint64_t p, std::uint64_t d);

// Largest a such that [m, km] holds at least p+1 multiples of p^a, by the
// count floor(km/p^a) - floor((m-1)/p^a).  Counting rule counterpart of
// lemma2_exponent; the two can differ and the certificate reports any
// divergence informationally.
std::uint32_t lemma1_exponent(std::uint64_t p, std::uint64_t m, int k);

// The modulus-lcm profile for the window [m, km]: a prime enters only if
// the window holds at least p+1 of its multiples (fewer than p+1 classes
// cannot cover a full residue system mod p), with exponent
// lemma2_exponent(p, km).
FactoredInteger compute_L(std::uint64_t m, int k, const FactorTable& table);

// Exact sum of 1/d over divisors_in_interval(F, lo, hi).
Rational divisor_reciprocal_sum(const FactoredInteger& F,
                                std::uint64_t lo,
                                std::uint64_t hi);

} // namespace covergap
