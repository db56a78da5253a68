#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "covergap/cases.hpp"
#include "covergap/factor_table.hpp"
#include "covergap/lcm_profile.hpp"
#include "covergap/rational.hpp"
#include "covergap/smooth_scan.hpp"

namespace covergap {

// A published result the certificate relies on without recomputation.
struct ExternalFact {
    std::string claim;
    std::string source;
    std::string applies_to;
};

struct Eq32Entry {
    std::uint64_t m = 0;
    Rational sum;          // divisor reciprocal sum of the lcm profile over [m, km]
    bool needs_case = false;
};

// Informational: a consulted profile point where the multiple-counting
// rule admits a smaller exponent than the p^a(p+1) <= d product rule (the
// profile follows the counting rule and drops the prime).
struct ExponentDivergence {
    std::uint64_t m = 0;
    std::uint64_t p = 0;
    std::uint32_t rule_counting = 0;
    std::uint32_t rule_product = 0;
};

// The assembled verification of the headline claim: for every m >= 3 there
// is no covering system with distinct moduli all inside [m, k*m].
struct ProofLog {
    ScanConfig config;
    std::vector<ExternalFact> external_facts;   // m in {3,4,5} and the 616000 cap
    AnchorChain anchors;                        // [117, max_m]
    std::vector<SmallClassification> small_range; // m in [6, 116]
    std::vector<Eq32Entry> eq32;                // the small-range m with T >= 1
    std::vector<CaseReport> cases;              // the eq32 entries with sum >= 1
    std::vector<Deviation> deviations;          // aggregated report
    std::vector<ExponentDivergence> exponent_notes;
    std::vector<std::string> notes;             // resolution notes, route map
    std::string verdict;                        // "verified (modulo external facts)" on success
};

// Options for prove().
struct ProveOptions {
    int exact_confirmations = 2;
};

// Runs the whole pipeline.  The routes partition [min_m, max_m]:
// external facts handle {3,4,5}; exact T(m) < 1 closes most of [6,116];
// the divisor-sum filter and the scripted cases close the rest of it;
// the anchor chain covers [117, max_m].
ProofLog prove(const ScanConfig& cfg, const FactorTable& table,
               const ProveOptions& options = {});

// All recorded reference mismatches (case-level plus aggregate counts).
std::vector<Deviation> deviation_report(const ProofLog& log);

// Divisor-sum filter for the given m values (each must have an lcm profile,
// i.e. lie in the small range with T >= 1).
std::vector<Eq32Entry> eq32_filter(const std::vector<std::uint64_t>& ms, int k,
                                   const FactorTable& table);

} // namespace covergap
