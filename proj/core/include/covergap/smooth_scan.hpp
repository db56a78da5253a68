#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "covergap/factor_table.hpp"
#include "covergap/rational.hpp"
#include "covergap/upper_fixed.hpp"

namespace covergap {

// Configuration of the certified range.  k is the interval multiplier
// ([m, km]); max_m defaults to 616000, the published upper bound for the
// least modulus of any distinct covering system.
struct ScanConfig {
    int k = 10;
    std::uint64_t min_m = 3;
    std::uint64_t max_m = 616000;

    std::uint64_t table_limit() const { return static_cast<std::uint64_t>(k) * max_m; }
    std::uint64_t scan_floor() const { return 117; } // first m above the small range
};

// Smoothness predicate for the sum T(m): n qualifies iff m <= n <= km and
// lpf(n)^2 < (k-1)m + 1 (integer arithmetic, strict).  A modulus with a
// larger prime factor p cannot take part: its multiples in the window form
// fewer than p residue classes mod p.
bool is_smooth_term(const FactorTable& table, std::uint64_t n, std::uint64_t m, int k);

// T(m) = sum of 1/n over qualifying n, exactly or as a certified upper bound.
Rational t_exact(const FactorTable& table, std::uint64_t m, const ScanConfig& cfg);
UpperFixed t_upper(const FactorTable& table, std::uint64_t m, const ScanConfig& cfg);

// The walk term: 1/j when lpf(j)^2 < (k-1)j + 1, else 0.  Satisfies the
// descent inequality T(m-1) <= T(m) + a_term(m-1).
Rational a_term(const FactorTable& table, std::uint64_t j, int k);

// One certified interval of the descent: for every m in [low, high],
// T(m) <= T(anchor) + sum of walk terms from m up to anchor-1, and `bound`
// is a certified upper bound on that quantity, so bound < 1 rules out a
// covering for the whole interval at once.
struct AnchorInterval {
    std::uint64_t low = 0;
    std::uint64_t high = 0;
    std::uint64_t anchor = 0;
    UpperFixed bound;
    // Filled for exactly-confirmed rows: the bound's term multiset resummed
    // with exact integer arithmetic, in lowest terms.
    bool exact_confirmed = false;
    std::string exact_num;
    std::string exact_den;
    std::string exact_approx; // truncated to 16 digits
};

struct AnchorChain {
    std::vector<AnchorInterval> intervals; // descending, tiling [floor, max_m]
    std::vector<std::string> tie_events;   // cumulative bounds that hit 1 exactly
    std::size_t total_anchors() const { return intervals.size(); }
};

// Certified descent over [cfg.scan_floor(), cfg.max_m].  Starting at
// anchor = max_m, accumulate T(anchor) and walk m downward, adding walk
// terms while the certified bound stays below 1; the interval [low, anchor]
// is then certified, the next anchor is low, and the process repeats with
// intervals [low', low-1].
//
// The anchor sums and walk terms here deliberately use slightly padded
// smoothness cutoffs, lpf(n) <= isqrt((k-1)*anchor+1) + 1 for anchor sums
// and lpf(j) <= isqrt((k-1)*j+1) + 2 for walk terms.  Padding only enlarges
// the accumulated upper bound, so every certificate remains valid; it also
// makes the interval table land exactly on the embedded reference table.
//
// The first `exact_confirmations` intervals get their bound re-derived with
// exact integer arithmetic (common-denominator resummation) and stored as a
// fraction in lowest terms.
AnchorChain anchor_chain(const FactorTable& table, const ScanConfig& cfg,
                         int exact_confirmations = 2);

// Exact value of the padded bound recorded for [low, anchor]: the anchor
// sum plus walk terms for j in [low, anchor-1].
Rational exact_chain_bound(const FactorTable& table, const ScanConfig& cfg,
                           std::uint64_t anchor, std::uint64_t low);

struct SmallClassification {
    std::uint64_t m = 0;
    Rational t;       // exact T(m)
    bool ge_one = false;
};

// Exact T(m) for every m in [cfg.min_m, 116].
std::vector<SmallClassification> classify_small(const FactorTable& table,
                                                const ScanConfig& cfg);

} // namespace covergap
