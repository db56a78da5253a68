#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "covergap/factor_table.hpp"
#include "covergap/rational.hpp"
#include "covergap/reduction.hpp"

namespace covergap {

// A point where a computed value is compared against a reference decimal
// or count.  Mismatches beyond tolerance become deviations in the report;
// they never silently alter a verdict.
struct Deviation {
    std::string location;
    std::string reference;
    std::string computed;
};

// One scripted replacement/discard step.  The expected_* fields pin the
// true outcome (verification fails on mismatch); the reference_* fields
// carry published reference values the computed results are compared to.
struct ScriptedLcmStep {
    std::uint64_t p = 0;
    std::uint32_t a = 0;
    bool expect_discard = false;             // true: count < p, discard
    std::uint32_t expected_count = 0;
    std::uint64_t expected_replacement = 0;  // 0 when discarding
    std::string reference_after;             // printed sum after the step ("" = none)
    std::string reference_count;             // printed multiple count ("" = none)
};

// A terminal mod-p split.  For the plain form the expected verdict is
// infeasible.  When `nested` is set, the split is expected to be feasible,
// every feasible assignment must contain at least one tight bin, every
// tight bin must equal nested->expected_tight_bin, and the reduced
// covering behind it must be infeasible at nested->p.
struct ScriptedSplit {
    std::uint64_t p = 0;
    std::string reference_s0;        // printed M0 reciprocal sum ("" = none)
    std::string reference_m1_count;  // printed |M1| ("" = none)

    struct Nested {
        std::uint64_t p = 0;
        std::vector<std::uint64_t> expected_tight_bin;
        std::string reference_s0;
    };
    std::optional<Nested> nested;
};

struct CaseScript {
    std::uint64_t m = 0;
    std::string reference_start;              // printed divisor sum ("" = none)
    std::vector<ScriptedLcmStep> lcm_steps;
    std::optional<ScriptedSplit> split;       // absent: final sum < 1 closes the case
    std::vector<Deviation> annotations;       // narration-level reference notes
};

struct CaseStepLog {
    std::string description;
    std::string sum_num;     // exact reciprocal sum after the step
    std::string sum_den;
    std::string sum_approx;  // truncated to 7 digits
};

struct CaseReport {
    std::uint64_t m = 0;
    bool contradiction_established = false;
    std::string failure_reason; // empty when established
    std::vector<CaseStepLog> steps;
    std::vector<Deviation> deviations;
};

// The scripted arguments, one per m where the divisor-sum filter is >= 1.
// Ordered by m.
const std::vector<CaseScript>& case_scripts();

// m-values of all scripts.
std::vector<std::uint64_t> scripted_case_values();

// Runs the script for m against the computed lcm profile and divisor
// multiset.  Throws InvalidArgument when no script exists for m.
CaseReport run_case(std::uint64_t m, int k, const FactorTable& table);

} // namespace covergap
