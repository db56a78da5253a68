#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "covergap/cases.hpp"
#include "covergap/errors.hpp"
#include "covergap/rational.hpp"

#include "fixtures.hpp"
#include "test_support.hpp"

using namespace covergap;

namespace {

CaseReport run(std::uint64_t m) {
    return run_case(m, 10, test_support::small_table());
}

bool has_deviation_at(const CaseReport& report, const std::string& needle) {
    return std::any_of(report.deviations.begin(), report.deviations.end(),
                       [&](const Deviation& d) {
                           return d.location.find(needle) != std::string::npos;
                       });
}

Rational final_sum(const CaseReport& report) {
    REQUIRE(!report.steps.empty());
    const CaseStepLog& last = report.steps.back();
    return rational_from_strings(last.sum_num, last.sum_den);
}

} // namespace

TEST_CASE("one script exists per filtered m") {
    std::vector<std::uint64_t> expected(std::begin(fixtures::kCaseValues),
                                        std::end(fixtures::kCaseValues));
    CHECK(scripted_case_values() == expected);
    CHECK(case_scripts().size() == expected.size());
}

TEST_CASE("unscripted m is rejected") {
    CHECK_THROWS_AS((void)run(12), InvalidArgument);
    CHECK_THROWS_AS((void)run(117), InvalidArgument);
}

TEST_CASE("every scripted case establishes its contradiction") {
    for (std::uint64_t m : fixtures::kCaseValues) {
        CaseReport report = run(m);
        CAPTURE(m);
        CHECK(report.contradiction_established);
        CHECK(report.failure_reason.empty());
        CHECK(!report.steps.empty());
    }
}

TEST_CASE("sum-below-one cases end on their exact values") {
    for (const fixtures::ExactSum& row : fixtures::kFinalSums) {
        CaseReport report = run(row.m);
        CAPTURE(row.m);
        CHECK(report.contradiction_established);
        CHECK(final_sum(report) ==
              rational_from_strings(row.num, row.den));
        CHECK(final_sum(report) < 1);
    }
}

TEST_CASE("the m=6 report records the reference discrepancy") {
    CaseReport report = run(6);
    // The reference prints 0.933333 after the second replacement; the exact
    // value is 39/40 = 0.975.  The mismatch lands in the deviation list and
    // the verdict stands on the exact value.
    REQUIRE(has_deviation_at(report, "m=6"));
    bool found = false;
    for (const Deviation& d : report.deviations)
        if (d.reference == "0.933333" && d.computed.rfind("0.975", 0) == 0) found = true;
    CHECK(found);
    CHECK(report.contradiction_established);
}

TEST_CASE("the m=16 report records both misprinted sums") {
    CaseReport report = run(16);
    CHECK(report.contradiction_established);
    int mismatches = 0;
    for (const Deviation& d : report.deviations)
        if (d.reference == "1.030402" || d.reference == "0.841369") ++mismatches;
    CHECK(mismatches == 2);
    CHECK(final_sum(report) == rat(2603, 3360));
}

TEST_CASE("the m=21 report flags the post-replacement anomaly") {
    CaseReport report = run(21);
    CHECK(report.contradiction_established);
    // Printed 1.156349 exceeds even the printed starting sum; the exact
    // post-replacement value is ~1.1057139.
    bool found = false;
    for (const Deviation& d : report.deviations)
        if (d.reference == "1.156349") found = true;
    CHECK(found);
}

TEST_CASE("the m=33 case discards instead of replacing") {
    CaseReport report = run(33);
    CHECK(report.contradiction_established);
    // Only 16 multiples of 17 are admissible, so the script discards them
    // (count < p) rather than replacing; the reference's printed 0.876758
    // differs from the exact 3249751/3706560 in the seventh digit.
    CHECK(final_sum(report) == rat(3249751, 3706560));
    bool annotated = false;
    for (const Deviation& d : report.deviations)
        if (d.location.find("m=33") != std::string::npos) annotated = true;
    CHECK(annotated);
}

TEST_CASE("quoted starting sums agree within tolerance") {
    Rational tolerance = rat(1, 1000000);
    for (const fixtures::DivisorSumRef& row : fixtures::kDivisorSums) {
        CaseReport report = run(row.m);
        CAPTURE(row.m);
        REQUIRE(!report.steps.empty());
        Rational start = rational_from_strings(report.steps.front().sum_num,
                                               report.steps.front().sum_den);
        CHECK(decimal_distance(start, row.printed) < tolerance);
    }
}

TEST_CASE("the unnarrated m=60..64 block is scripted and closed") {
    for (std::uint64_t m : {60ULL, 61ULL, 62ULL, 63ULL, 64ULL}) {
        CaseReport report = run(m);
        CAPTURE(m);
        CHECK(report.contradiction_established);
        CHECK(has_deviation_at(report, "m=" + std::to_string(m) + " case"));
    }
}

TEST_CASE("no recorded deviation flips a verdict") {
    for (std::uint64_t m : fixtures::kCaseValues) {
        CaseReport report = run(m);
        CAPTURE(m);
        CHECK(report.contradiction_established);
    }
}
