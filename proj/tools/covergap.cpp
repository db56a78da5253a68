#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "covergap/cases.hpp"
#include "covergap/certificate.hpp"
#include "covergap/covering.hpp"
#include "covergap/errors.hpp"
#include "covergap/factor_table.hpp"
#include "covergap/factored_integer.hpp"
#include "covergap/lcm_profile.hpp"
#include "covergap/proof.hpp"
#include "covergap/rational.hpp"
#include "covergap/reduction.hpp"
#include "covergap/smooth_scan.hpp"

namespace {

using namespace covergap;
using nlohmann::json;

std::optional<std::filesystem::path> cache_path_opt(const std::string& cache) {
    if (cache.empty()) return std::nullopt;
    return std::filesystem::path(cache);
}

FactorTable table_for(std::uint64_t limit, const std::string& cache) {
    return FactorTable::load_or_build(limit, cache_path_opt(cache));
}

std::string fraction(const Rational& x) {
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

json rational_json(const Rational& x) {
    return json{{"num", x.get_num().get_str()},
                {"den", x.get_den().get_str()},
                {"approx", truncated_decimal(x, 16)}};
}

int run_tm(std::uint64_t m, bool exact, const std::string& cache) {
    if (m < 3) throw InvalidArgument("tm: m must be at least 3");
    ScanConfig cfg;
    cfg.max_m = m;
    FactorTable table = table_for(cfg.table_limit(), cache);
    if (m <= 116 || exact) {
        Rational t = t_exact(table, m, cfg);
        std::cout << "T(" << m << ") = " << fraction(t) << " ~ " << truncated_decimal(t, 7)
                  << "\n";
    } else {
        UpperFixed u = t_upper(table, m, cfg);
        std::cout << "T(" << m << ") <= " << u.decimal_string(16) << " (" << u.term_count()
                  << " terms)\n";
    }
    return 0;
}

int run_anchors(const std::string& cache) {
    ScanConfig cfg;
    FactorTable table = table_for(cfg.table_limit(), cache);
    AnchorChain chain = anchor_chain(table, cfg);
    for (const AnchorInterval& iv : chain.intervals)
        std::cout << iv.low << " " << iv.high << " " << iv.anchor << " "
                  << iv.bound.decimal_string(16) << "\n";
    return 0;
}

int run_scan(std::uint64_t from, std::uint64_t to, const std::string& cache) {
    ScanConfig cfg;
    if (from < cfg.scan_floor())
        throw InvalidArgument("scan: --from must be at least " +
                              std::to_string(cfg.scan_floor()));
    if (to < from) throw InvalidArgument("scan: --to must be at least --from");
    if (to > cfg.max_m)
        throw InvalidArgument("scan: --to must be at most " + std::to_string(cfg.max_m));
    cfg.max_m = to;
    FactorTable table = table_for(cfg.table_limit(), cache);
    AnchorChain chain = anchor_chain(table, cfg);
    std::cout << "m_low,m_high,bound_num,bound_den,bound_approx\n";
    for (const AnchorInterval& iv : chain.intervals) {
        if (iv.high < from) break;
        // A bound certified down to iv.low also certifies any sub-interval.
        std::uint64_t low = std::max(iv.low, from);
        auto [num, den] = iv.bound.as_fraction();
        std::cout << low << "," << iv.high << "," << num.get_str() << "," << den.get_str()
                  << "," << iv.bound.decimal_string(16) << "\n";
    }
    return 0;
}

int run_lm(std::uint64_t m, const std::string& cache) {
    if (m < 3) throw InvalidArgument("lm: m must be at least 3");
    ScanConfig cfg;
    cfg.max_m = m;
    FactorTable table = table_for(cfg.table_limit(), cache);
    FactoredInteger profile = compute_L(m, cfg.k, table);
    std::cout << "L(" << m << ") = " << profile.to_string() << " = " << profile.value()
              << "\n";
    return 0;
}

int run_divsum(std::uint64_t m, const std::string& cache) {
    if (m < 3) throw InvalidArgument("divsum: m must be at least 3");
    ScanConfig cfg;
    cfg.max_m = m;
    FactorTable table = table_for(cfg.table_limit(), cache);
    FactoredInteger profile = compute_L(m, cfg.k, table);
    Rational sum = divisor_reciprocal_sum(profile, m, m * static_cast<std::uint64_t>(cfg.k));
    std::cout << fraction(sum) << " ~ " << truncated_decimal(sum, 7) << "\n";
    return 0;
}

int run_verify(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw InvalidArgument("verify: cannot open " + file);
    CoveringSystem system;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j = json::parse(line);
        long long a = j.at("a").get<long long>();
        long long n = j.at("n").get<long long>();
        if (n < 1)
            throw InvalidArgument("verify: line " + std::to_string(line_no) +
                                  ": modulus must be positive");
        long long r = a % n;
        if (r < 0) r += n;
        system.congruences.push_back({static_cast<std::uint64_t>(r),
                                      static_cast<std::uint64_t>(n)});
    }
    bool covering = is_covering(system);
    Rational density = uncovered_density(system);
    std::cout << "covering: " << (covering ? "yes" : "no") << "\n";
    std::cout << "uncovered density: " << fraction(density) << "\n";
    return covering ? 0 : 1;
}

int run_reduce(std::uint64_t m, std::uint64_t prime, int k,
               const std::vector<std::string>& after, const std::string& cache) {
    if (m < 3) throw InvalidArgument("reduce: m must be at least 3");
    ScanConfig cfg;
    cfg.k = k;
    cfg.max_m = m;
    FactorTable table = table_for(cfg.table_limit(), cache);
    FactoredInteger profile = compute_L(m, k, table);
    ModuliMultiset moduli(
        divisors_in_interval(profile, m, m * static_cast<std::uint64_t>(k)));

    json steps = json::array();
    for (const std::string& spec : after) {
        auto comma = spec.find(',');
        if (comma == std::string::npos)
            throw InvalidArgument("reduce: --after-lemma3 expects p,a");
        std::uint64_t p = std::stoull(spec.substr(0, comma));
        auto a = static_cast<std::uint32_t>(std::stoul(spec.substr(comma + 1)));
        MultisetStep step = lemma3_multiset(moduli, p, a);
        moduli = step.result;
        steps.push_back({{"p", p},
                         {"a", a},
                         {"removed", step.removed},
                         {"replacement", step.replacement}});
    }

    ModSplit split = mod_p_split(moduli, prime);
    BinVerdict verdict = bins_coverable(split);

    json out;
    out["m"] = m;
    out["k"] = k;
    out["prime"] = prime;
    out["after"] = std::move(steps);
    out["M0"] = split.M0.to_sorted_vector();
    out["M1"] = split.M1.to_sorted_vector();
    out["S0"] = rational_json(split.S0);
    out["deficit"] = rational_json(split.deficit);
    out["max_groups"] = verdict.max_groups;
    switch (verdict.kind) {
    case BinVerdict::Kind::feasible: out["verdict"] = "feasible"; break;
    case BinVerdict::Kind::infeasible: out["verdict"] = "infeasible"; break;
    case BinVerdict::Kind::inconclusive: out["verdict"] = "inconclusive"; break;
    }
    if (!verdict.witness.empty()) out["witness"] = verdict.witness;
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_case_cmd(std::uint64_t m, const std::string& cache) {
    ScanConfig cfg;
    cfg.max_m = m;
    FactorTable table = table_for(cfg.table_limit(), cache);
    CaseReport rep = run_case(m, cfg.k, table);
    std::cout << "case m=" << rep.m << "\n";
    for (const CaseStepLog& st : rep.steps)
        std::cout << "  " << st.description << ": " << st.sum_num << "/" << st.sum_den
                  << " ~ " << st.sum_approx << "\n";
    if (!rep.deviations.empty()) {
        std::cout << "deviations:\n";
        for (const Deviation& d : rep.deviations)
            std::cout << "  " << d.location << ": reference " << d.reference << ", computed "
                      << d.computed << "\n";
    }
    if (rep.contradiction_established) {
        std::cout << "contradiction established\n";
        return 0;
    }
    std::cout << "not established: " << rep.failure_reason << "\n";
    return 1;
}

int run_prove(int k, std::uint64_t max_m, const std::string& out_path,
              const std::string& cache) {
    ScanConfig cfg;
    cfg.k = k;
    cfg.max_m = max_m;
    FactorTable table = table_for(cfg.table_limit(), cache);
    ProofLog log = prove(cfg, table);

    std::size_t hot = 0;
    for (const SmallClassification& c : log.small_range)
        if (c.ge_one) ++hot;
    std::size_t needs = 0;
    for (const Eq32Entry& e : log.eq32)
        if (e.needs_case) ++needs;
    std::size_t established = 0;
    for (const CaseReport& c : log.cases)
        if (c.contradiction_established) ++established;

    std::cout << "external facts: " << log.external_facts.size() << "\n";
    std::cout << "small range: " << log.small_range.size() << " values, " << hot
              << " with T >= 1\n";
    std::cout << "divisor-sum filter: " << log.eq32.size() - needs << " closed, " << needs
              << " need a case\n";
    std::cout << "cases established: " << established << "/" << log.cases.size() << "\n";
    std::cout << "descent intervals: " << log.anchors.total_anchors() << "\n";
    std::cout << "deviations: " << deviation_report(log).size() << "\n";
    std::cout << "verdict: " << log.verdict << "\n";

    if (!out_path.empty()) {
        write_certificate(log, out_path);
        std::cout << "wrote " << out_path << "\n";
    }
    return log.verdict == "verified (modulo external facts)" ? 0 : 1;
}

int run_check(const std::string& file) {
    CheckResult result = check_certificate_file(file);
    if (result.accepted) {
        std::cout << "accepted\n";
        return 0;
    }
    std::cout << "rejected:\n";
    for (const std::string& f : result.failures) std::cout << "  - " << f << "\n";
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified nonexistence of distinct covering systems with all moduli in "
                 "[m, k*m]"};
    app.require_subcommand(1);
    std::string cache;
    app.add_option("--sieve-cache", cache, "binary factor-sieve cache file");

    std::uint64_t m = 0;
    bool exact = false;
    auto* tm = app.add_subcommand("tm", "window reciprocal sum T(m)");
    tm->add_option("m", m, "window start")->required();
    tm->add_flag("--exact", exact, "force exact rational evaluation");

    auto* anchors = app.add_subcommand("anchors", "certified descent intervals");

    std::uint64_t from = 117, to = 616000;
    auto* scan = app.add_subcommand("scan", "descent intervals as CSV");
    scan->add_option("--from", from, "lowest m to certify");
    scan->add_option("--to", to, "highest m to certify");

    auto* lm = app.add_subcommand("lm", "modulus-lcm profile L(m)");
    lm->add_option("m", m, "window start")->required();

    auto* divsum = app.add_subcommand("divsum", "reciprocal sum over profile divisors in "
                                                "[m, k*m]");
    divsum->add_option("m", m, "window start")->required();

    std::string file;
    auto* verify = app.add_subcommand("verify", "check a covering given as JSON lines "
                                                "{\"a\": ..., \"n\": ...}");
    verify->add_option("file", file, "input path")->required();

    std::uint64_t prime = 0;
    int k = 10;
    std::vector<std::string> after;
    auto* reduce = app.add_subcommand("reduce", "split the admissible moduli modulo a prime "
                                                "and decide bin feasibility");
    reduce->add_option("--m", m, "window start")->required();
    reduce->add_option("--prime", prime, "split prime")->required();
    reduce->add_option("--k", k, "interval multiplier");
    reduce->add_option("--after-lemma3", after, "apply a replacement step first (p,a)");

    auto* case_cmd = app.add_subcommand("case", "run the scripted case analysis for m");
    case_cmd->add_option("m", m, "window start")->required();

    std::uint64_t max_m = 616000;
    std::string out_path;
    auto* prove_cmd = app.add_subcommand("prove", "assemble the full certificate");
    prove_cmd->add_option("--k", k, "interval multiplier");
    prove_cmd->add_option("--max-m", max_m, "top of the certified range");
    prove_cmd->add_option("--out", out_path, "write the certificate JSON here");

    auto* check_cmd = app.add_subcommand("check", "replay-verify a certificate");
    check_cmd->add_option("file", file, "certificate path")->required();

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (tm->parsed()) return run_tm(m, exact, cache);
        if (anchors->parsed()) return run_anchors(cache);
        if (scan->parsed()) return run_scan(from, to, cache);
        if (lm->parsed()) return run_lm(m, cache);
        if (divsum->parsed()) return run_divsum(m, cache);
        if (verify->parsed()) return run_verify(file);
        if (reduce->parsed()) return run_reduce(m, prime, k, after, cache);
        if (case_cmd->parsed()) return run_case_cmd(m, cache);
        if (prove_cmd->parsed()) return run_prove(k, max_m, out_path, cache);
        if (check_cmd->parsed()) return run_check(file);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
