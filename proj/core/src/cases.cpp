#include "covergap/cases.hpp"

#include <algorithm>

#include "covergap/errors.hpp"
#include "covergap/factored_integer.hpp"
#include "covergap/lcm_profile.hpp"

namespace covergap {

namespace {

// Printed reference decimals are truncated or rounded to six/seven digits;
// anything farther than 1e-6 from the exact value is a genuine discrepancy
// worth recording, anything closer is formatting noise.
const Rational& reference_tolerance() {
    static const Rational tol(1, 1000000);
    return tol;
}

void note_reference(CaseReport& rep, const std::string& location, const Rational& value,
                    const std::string& reference) {
    if (reference.empty()) return;
    Rational gap = decimal_distance(value, reference);
    if (gap < reference_tolerance()) return;
    rep.deviations.push_back({location, reference, truncated_decimal(value, 7)});
}

void note_count(CaseReport& rep, const std::string& location, std::uint64_t value,
                const std::string& reference) {
    if (reference.empty() || reference == std::to_string(value)) return;
    rep.deviations.push_back({location, reference, std::to_string(value)});
}

void log_step(CaseReport& rep, std::string description, const Rational& value) {
    CaseStepLog log;
    log.description = std::move(description);
    log.sum_num = value.get_num().get_str();
    log.sum_den = value.get_den().get_str();
    log.sum_approx = truncated_decimal(value, 7);
    rep.steps.push_back(std::move(log));
}

std::string set_to_string(const std::vector<std::uint64_t>& values) {
    std::string out = "{";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(values[i]);
    }
    out += "}";
    return out;
}

Deviation absent_case_note(std::uint64_t m) {
    return {"m=" + std::to_string(m) + " case",
            "absent from the reference case list",
            "closed by the multiset engine"};
}

std::vector<CaseScript> build_scripts() {
    std::vector<CaseScript> scripts;

    // Replacement-only cases: one or two replacement (or discard) steps
    // drive the reciprocal sum below 1.
    scripts.push_back({
        .m = 6,
        .reference_start = "1.3761905",
        .lcm_steps = {{.p = 7, .a = 1, .expected_count = 7, .expected_replacement = 120,
                       .reference_after = "1.016667", .reference_count = "7"},
                      {.p = 2, .a = 4, .expected_count = 2, .expected_replacement = 24,
                       .reference_after = "0.933333", .reference_count = "2"}},
    });
    scripts.push_back({
        .m = 7,
        .reference_start = "1.2396825",
        .lcm_steps = {{.p = 2, .a = 4, .expected_count = 2, .expected_replacement = 24,
                       .reference_after = "1.198016", .reference_count = "2"}},
        .split = ScriptedSplit{
            .p = 7,
            .reference_s0 = "0.8",
            .reference_m1_count = "9",
            .nested = ScriptedSplit::Nested{.p = 5,
                                            .expected_tight_bin = {5},
                                            .reference_s0 = "0.486111"},
        },
    });
    scripts.push_back({
        .m = 8,
        .reference_start = "1.1232142",
        .split = ScriptedSplit{.p = 7, .reference_s0 = "0.868056", .reference_m1_count = "8"},
    });
    scripts.push_back({
        .m = 9,
        .reference_start = "1.0212301",
        .split = ScriptedSplit{.p = 7, .reference_s0 = "0.754167", .reference_m1_count = "9"},
    });
    scripts.push_back({
        .m = 15,
        .reference_start = "1.0909921",
        .split = ScriptedSplit{.p = 11, .reference_s0 = "0.908056", .reference_m1_count = "10"},
    });
    scripts.push_back({
        .m = 16,
        .reference_start = "1.0370689",
        .lcm_steps = {{.p = 5, .a = 2, .expected_count = 5, .expected_replacement = 60,
                       .reference_after = "1.030402", .reference_count = "5"},
                      {.p = 11, .a = 1, .expected_count = 11, .expected_replacement = 2520,
                       .reference_after = "0.841369", .reference_count = "11"}},
    });
    scripts.push_back({
        .m = 18,
        .reference_start = "1.0035335",
        .split = ScriptedSplit{.p = 11, .reference_s0 = "0.802361", .reference_m1_count = "13"},
        .annotations = {{"m=18 narration", "eight moduli left after relabeling",
                         "nine values are listed"}},
    });
    scripts.push_back({
        .m = 20,
        .reference_start = "1.1565610",
        .lcm_steps = {{.p = 13, .a = 1, .expected_count = 13, .expected_replacement = 27720,
                       .reference_after = "0.984189", .reference_count = "13"}},
    });
    scripts.push_back({
        .m = 21,
        .reference_start = "1.1161306",
        .lcm_steps = {{.p = 2, .a = 6, .expected_count = 2, .expected_replacement = 96,
                       .reference_after = "1.156349", .reference_count = "2"}},
        .split = ScriptedSplit{.p = 13, .reference_s0 = "0.928498", .reference_m1_count = "14"},
        .annotations = {{"m=21 narration",
                         "printed sum 1.156349 after the replacement exceeds the printed "
                         "starting sum 1.1161306",
                         "the replacement lowers the exact sum to about 1.1057139"}},
    });
    scripts.push_back({
        .m = 22,
        .reference_start = "1.0776866",
        .split = ScriptedSplit{.p = 13, .reference_s0 = "0.900471", .reference_m1_count = "14"},
    });
    scripts.push_back({
        .m = 23,
        .reference_start = "1.0411408",
        .split = ScriptedSplit{.p = 13, .reference_s0 = "0.863925", .reference_m1_count = "14"},
    });
    scripts.push_back({
        .m = 24,
        .reference_start = "1.0539099",
        .split = ScriptedSplit{.p = 13, .reference_s0 = "0.872421", .reference_m1_count = "15"},
    });
    scripts.push_back({
        .m = 25,
        .reference_start = "1.0122433",
        .split = ScriptedSplit{.p = 13, .reference_s0 = "0.830754", .reference_m1_count = "15"},
    });
    scripts.push_back({
        .m = 33,
        .reference_start = "1.0200675",
        .lcm_steps = {{.p = 17, .a = 1, .expect_discard = true, .expected_count = 16,
                       .reference_after = "0.876758", .reference_count = "17"}},
        .annotations = {{"m=33 narration", "multiple list ends with 18*13",
                         "the last admissible multiple is 18*17 = 306; the list holds "
                         "16 values, not 17"},
                        {"m=33 action", "replace 17 multiples by one congruence modulo 720720",
                         "16 admissible multiples are fewer than 17 classes, so all are "
                         "discarded instead"}},
    });
    scripts.push_back({
        .m = 42,
        .reference_start = "1.0768676",
        .lcm_steps = {{.p = 19, .a = 1, .expected_count = 19, .expected_replacement = 12252240,
                       .reference_after = "0.964332", .reference_count = "19"}},
    });
    scripts.push_back({
        .m = 43,
        .reference_start = "1.0577420",
        .lcm_steps = {{.p = 19, .a = 1, .expected_count = 19, .expected_replacement = 12252240,
                       .reference_after = "0.945206", .reference_count = "19"}},
    });
    scripts.push_back({
        .m = 44,
        .reference_start = "1.0623295",
        .split = ScriptedSplit{.p = 19, .reference_s0 = "0.949794", .reference_m1_count = "19"},
    });
    scripts.push_back({
        .m = 45,
        .reference_start = "1.0485866",
        .lcm_steps = {{.p = 19, .a = 1, .expected_count = 19, .expected_replacement = 12252240,
                       .reference_after = "0.936051", .reference_count = "19"}},
    });
    scripts.push_back({
        .m = 46,
        .reference_start = "1.0329338",
        .split = ScriptedSplit{.p = 19, .reference_s0 = "0.918205", .reference_m1_count = "20"},
    });
    scripts.push_back({
        .m = 47,
        .reference_start = "1.0372351",
        .split = ScriptedSplit{.p = 19, .reference_s0 = "0.922506", .reference_m1_count = "22"},
        .annotations = {{"m=47 narration", "displayed private set holds 21 values including 23",
                         "23 does not divide the profile; 20 values are admissible"}},
    });
    scripts.push_back({
        .m = 48,
        .reference_start = "1.0435245",
        .split = ScriptedSplit{.p = 19, .reference_s0 = "0.92669", .reference_m1_count = "21"},
    });
    scripts.push_back({
        .m = 49,
        .reference_start = "1.0247320",
        .split = ScriptedSplit{.p = 19, .reference_s0 = "0.907898", .reference_m1_count = "22"},
        .annotations = {{"m=49 narration", "displayed range {3..18, 20..25} includes 23",
                         "23 does not divide the profile; 21 values are admissible"}},
    });
    scripts.push_back({
        .m = 50,
        .reference_start = "1.0083683",
        .split = ScriptedSplit{.p = 19, .reference_s0 = "0.88951", .reference_m1_count = "23"},
        .annotations = {{"m=50 narration", "displayed range {3, ..., 26} lists 24 values",
                         "19 and 23 are not admissible; 22 values remain"}},
    });
    // The divisor-sum filter also exceeds 1 for 60..64; no reference text
    // covers them, so the engine closes them with the same arguments the
    // neighboring cases use.
    for (std::uint64_t m : {60, 61, 62}) {
        scripts.push_back({
            .m = m,
            .lcm_steps = {{.p = 23, .a = 1, .expected_count = 23,
                           .expected_replacement = 1163962800}},
            .annotations = {absent_case_note(m)},
        });
    }
    for (std::uint64_t m : {63, 64}) {
        scripts.push_back({
            .m = m,
            .split = ScriptedSplit{.p = 23},
            .annotations = {absent_case_note(m)},
        });
    }

    std::sort(scripts.begin(), scripts.end(),
              [](const CaseScript& a, const CaseScript& b) { return a.m < b.m; });
    return scripts;
}

const CaseScript* find_script(std::uint64_t m) {
    for (const CaseScript& s : case_scripts())
        if (s.m == m) return &s;
    return nullptr;
}

} // namespace

const std::vector<CaseScript>& case_scripts() {
    static const std::vector<CaseScript> scripts = build_scripts();
    return scripts;
}

std::vector<std::uint64_t> scripted_case_values() {
    std::vector<std::uint64_t> ms;
    for (const CaseScript& s : case_scripts()) ms.push_back(s.m);
    return ms;
}

CaseReport run_case(std::uint64_t m, int k, const FactorTable& table) {
    const CaseScript* script = find_script(m);
    if (!script)
        throw InvalidArgument("run_case: no scripted argument for m = " + std::to_string(m));

    CaseReport rep;
    rep.m = m;
    rep.deviations = script->annotations;

    const std::uint64_t hi = m * static_cast<std::uint64_t>(k);
    const std::string tag = "m=" + std::to_string(m);

    FactoredInteger profile = compute_L(m, k, table);
    std::vector<std::uint64_t> admissible = divisors_in_interval(profile, m, hi);
    ModuliMultiset moduli(admissible);
    Rational sum = moduli.reciprocal_sum();
    log_step(rep,
             "reciprocal sum of the " + std::to_string(admissible.size()) +
                 " admissible moduli in [" + std::to_string(m) + ", " + std::to_string(hi) + "]",
             sum);
    note_reference(rep, tag + " start sum", sum, script->reference_start);

    for (std::size_t i = 0; i < script->lcm_steps.size(); ++i) {
        const ScriptedLcmStep& st = script->lcm_steps[i];
        const std::string step_tag = tag + " step " + std::to_string(i + 1);
        MultisetStep outcome;
        try {
            outcome = st.expect_discard ? lemma1_multiset(moduli, st.p, st.a)
                                        : lemma3_multiset(moduli, st.p, st.a);
        } catch (const LemmaPreconditionError& e) {
            rep.failure_reason = step_tag + ": " + e.what();
            return rep;
        }
        if (outcome.multiple_count != st.expected_count) {
            rep.failure_reason = step_tag + ": found " + std::to_string(outcome.multiple_count) +
                                 " multiples, expected " + std::to_string(st.expected_count);
            return rep;
        }
        if (!st.expect_discard && outcome.replacement != st.expected_replacement) {
            rep.failure_reason = step_tag + ": replacement " +
                                 std::to_string(outcome.replacement) + ", expected " +
                                 std::to_string(st.expected_replacement);
            return rep;
        }
        moduli = outcome.result;
        sum = moduli.reciprocal_sum();
        std::string base = std::to_string(outcome.multiple_count) + " multiples of " +
                           std::to_string(st.p) + "^" + std::to_string(st.a);
        log_step(rep,
                 st.expect_discard
                     ? "discard the " + base + " (fewer than " + std::to_string(st.p) +
                           " residue classes are available)"
                     : "replace the " + base + " by one congruence modulo " +
                           std::to_string(outcome.replacement),
                 sum);
        note_count(rep, step_tag + " count", outcome.multiple_count, st.reference_count);
        note_reference(rep, step_tag + " sum", sum, st.reference_after);
    }

    if (!script->split) {
        if (sum < 1) {
            rep.contradiction_established = true;
        } else {
            rep.failure_reason = tag + ": final reciprocal sum " + truncated_decimal(sum, 7) +
                                 " is not below 1";
        }
        return rep;
    }

    const ScriptedSplit& sp = *script->split;
    ModSplit split = mod_p_split(moduli, sp.p);
    log_step(rep,
             "split modulo " + std::to_string(sp.p) + ": " + std::to_string(split.M0.size()) +
                 " shared moduli (reciprocal sum below), " + std::to_string(split.M1.size()) +
                 " private moduli",
             split.S0);
    note_count(rep, tag + " split |M1|", split.M1.size(), sp.reference_m1_count);
    note_reference(rep, tag + " split S0", split.S0, sp.reference_s0);
    if (split.S0 >= 1) {
        rep.failure_reason = tag + ": shared reciprocal sum is not below 1";
        return rep;
    }

    BinVerdict verdict = bins_coverable(split);
    if (!sp.nested) {
        if (verdict.kind == BinVerdict::Kind::infeasible) {
            log_step(rep,
                     "at most " + std::to_string(verdict.max_groups) +
                         " disjoint private groups reach the deficit, but all " +
                         std::to_string(sp.p) + " reduced coverings need one",
                     split.deficit);
            rep.contradiction_established = true;
        } else {
            rep.failure_reason = tag + ": the group search found " +
                                 std::to_string(verdict.max_groups) +
                                 " disjoint groups, enough to serve every reduced covering";
        }
        return rep;
    }

    // Nested route: the split is feasible, but every way of serving all p
    // reduced coverings forces a bin whose reciprocal sum is exactly the
    // deficit.  The covering behind that bin has density exactly 1, so it
    // must itself be a covering, and its own split is infeasible.
    if (verdict.kind != BinVerdict::Kind::feasible) {
        rep.failure_reason = tag + ": expected a feasible split before the nested reduction";
        return rep;
    }
    std::vector<Assignment> assignments = enumerate_feasible_assignments(split);
    if (assignments.empty()) {
        rep.failure_reason = tag + ": no feasible assignments despite a feasible group search";
        return rep;
    }
    std::vector<std::uint64_t> expected_bin = sp.nested->expected_tight_bin;
    std::sort(expected_bin.begin(), expected_bin.end());
    std::size_t witness_assignment = assignments.size();
    std::size_t witness_bin = 0;
    for (std::size_t ai = 0; ai < assignments.size(); ++ai) {
        const Assignment& a = assignments[ai];
        bool has_tight = false;
        for (std::size_t bi = 0; bi < a.bins.size(); ++bi) {
            if (!a.tight[bi]) continue;
            has_tight = true;
            if (a.bins[bi] != expected_bin) {
                rep.failure_reason = tag + ": tight bin " + set_to_string(a.bins[bi]) +
                                     " differs from the expected " + set_to_string(expected_bin);
                return rep;
            }
            if (witness_assignment == assignments.size()) {
                witness_assignment = ai;
                witness_bin = bi;
            }
        }
        if (!has_tight) {
            rep.failure_reason = tag + ": a feasible assignment has no tight bin, "
                                       "so the nested reduction does not apply to it";
            return rep;
        }
    }
    log_step(rep,
             std::to_string(assignments.size()) +
                 " feasible assignments, each forcing the tight private group " +
                 set_to_string(expected_bin),
             split.deficit);

    ModuliMultiset nested_base =
        tight_bin_moduli(split, assignments[witness_assignment], witness_bin);
    ModSplit nested = mod_p_split(nested_base, sp.nested->p);
    log_step(rep,
             "behind the tight group, split modulo " + std::to_string(sp.nested->p) + ": " +
                 std::to_string(nested.M0.size()) + " shared moduli (reciprocal sum below), " +
                 std::to_string(nested.M1.size()) + " private moduli",
             nested.S0);
    note_reference(rep, tag + " nested S0", nested.S0, sp.nested->reference_s0);

    BinVerdict nested_verdict = bins_coverable(nested);
    if (nested_verdict.kind == BinVerdict::Kind::infeasible) {
        log_step(rep,
                 "at most " + std::to_string(nested_verdict.max_groups) +
                     " disjoint private groups reach the deficit, but all " +
                     std::to_string(sp.nested->p) + " reduced coverings need one",
                 nested.deficit);
        rep.contradiction_established = true;
    } else {
        rep.failure_reason = tag + ": the nested group search found " +
                             std::to_string(nested_verdict.max_groups) +
                             " disjoint groups, enough to serve every reduced covering";
    }
    return rep;
}

} // namespace covergap
