#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "covergap/factored_integer.hpp"
#include "covergap/rational.hpp"

namespace covergap {

// x === residue (mod modulus), with 0 <= residue < modulus.
struct Congruence {
    std::uint64_t residue = 0;
    std::uint64_t modulus = 1;

    bool operator==(const Congruence&) const = default;
};

// A finite set of congruences.  Duplicated moduli are allowed; systems with
// pairwise distinct moduli > 1 are what the certification is ultimately
// about, but the transformations below are valid for any covering.
struct CoveringSystem {
    std::vector<Congruence> congruences;
};

inline constexpr std::uint64_t kDefaultOracleBound = 10'000'000;

// Exact lcm of all moduli (factored form).
FactoredInteger lcm_of(const CoveringSystem& C);

// Brute force: scans every residue modulo the lcm with a bitset.
// Throws OracleOverflow when the lcm exceeds `bound`.
bool is_covering(const CoveringSystem& C, std::uint64_t bound = kDefaultOracleBound);

// (number of uncovered residues mod lcm) / lcm, exact.
Rational uncovered_density(const CoveringSystem& C, std::uint64_t bound = kDefaultOracleBound);

// Independent second verifier: descends the divisor tree of the lcm,
// splitting one prime at a time and pruning branches already covered.
// Used to cross-check the bitset oracle.
std::uint64_t uncovered_count_tree(const CoveringSystem& C, std::uint64_t bound = kDefaultOracleBound);

// Replaces c by the p congruences (residue + i*modulus mod p*modulus);
// together they cover exactly the set c covers.
std::vector<Congruence> split(const Congruence& c, std::uint64_t p);

// Discards every congruence whose modulus p^a divides, which is legal for
// a covering when there are fewer than p of them: inside a coset of
// p^(a-1) there are p classes mod p^a and each discarded congruence meets
// only one, so some class avoids them all and the remaining congruences
// must cover it by themselves.  Precondition (count < p, p^a | lcm)
// violations throw LemmaPreconditionError.
CoveringSystem lemma1_discard(const CoveringSystem& C, std::uint64_t p, std::uint32_t a);

// When the lcm has p-valuation exactly a and exactly p congruences carry
// moduli p^a * m_1, ..., p^a * m_p, those p congruences can be replaced by
// a single congruence with modulus p^(a-1) * lcm(m_1..m_p).  The residue is
// found by ascending search; failure to find one would falsify the
// transformation and throws FalsificationError.
std::pair<CoveringSystem, std::uint64_t> lemma3_replace(const CoveringSystem& C,
                                                        std::uint64_t p,
                                                        std::uint32_t a,
                                                        std::uint64_t bound = kDefaultOracleBound);

// Same hypotheses as lemma3_replace, plus: two of the p congruences lie in
// the same class mod p^a.  Then all p can be discarded outright.
CoveringSystem lemma3_discard_same_class(const CoveringSystem& C,
                                         std::uint64_t p,
                                         std::uint32_t a);

// Reduces a covering modulo p by substituting x = j + p*y for each class
// j in [0, p): congruences with p ∤ n reappear in every class (modulus n,
// residue (a - j)/p mod n), and congruences with p | n land in the single
// class j === a (mod p) with modulus n/p.  Each of the p results covers
// the integers.
std::vector<CoveringSystem> lemma4_reduce(const CoveringSystem& C, std::uint64_t p);

} // namespace covergap
