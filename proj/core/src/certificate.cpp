#include "covergap/certificate.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <set>

#include <openssl/evp.h>

#include "covergap/errors.hpp"

namespace covergap {

namespace {

using nlohmann::json;

// Missing keys come back as null, which the parsers then reject with a
// located message instead of tripping an assertion.
json field(const json& row, const char* key) {
    return row.is_object() && row.contains(key) ? row[key] : json();
}

json rational_json(const Rational& x, int digits = 16) {
    return json{{"num", x.get_num().get_str()},
                {"den", x.get_den().get_str()},
                {"approx", truncated_decimal(x, digits)}};
}

json upper_fixed_json(const UpperFixed& bound) {
    auto [num, den] = bound.as_fraction();
    return json{{"num", num.get_str()},
                {"den", den.get_str()},
                {"approx", bound.decimal_string(16)}};
}

json payload_json(const ProofLog& log) {
    json j;
    j["config"] = {{"k", log.config.k}, {"min_m", log.config.min_m}, {"max_m", log.config.max_m}};

    j["external_facts"] = json::array();
    for (const ExternalFact& f : log.external_facts)
        j["external_facts"].push_back(
            {{"claim", f.claim}, {"source", f.source}, {"applies_to", f.applies_to}});

    json intervals = json::array();
    for (const AnchorInterval& iv : log.anchors.intervals) {
        json row{{"low", iv.low},
                 {"high", iv.high},
                 {"anchor", iv.anchor},
                 {"terms", std::to_string(iv.bound.term_count())},
                 {"bound", upper_fixed_json(iv.bound)}};
        if (iv.exact_confirmed)
            row["exact"] = {{"num", iv.exact_num}, {"den", iv.exact_den},
                            {"approx", iv.exact_approx}};
        intervals.push_back(std::move(row));
    }
    j["anchors"] = {{"intervals", std::move(intervals)},
                    {"tie_events", log.anchors.tie_events}};

    j["small_range"] = json::array();
    for (const SmallClassification& c : log.small_range)
        j["small_range"].push_back(
            {{"m", c.m}, {"t", rational_json(c.t)}, {"ge_one", c.ge_one}});

    j["eq32"] = json::array();
    for (const Eq32Entry& e : log.eq32)
        j["eq32"].push_back(
            {{"m", e.m}, {"sum", rational_json(e.sum)}, {"needs_case", e.needs_case}});

    j["cases"] = json::array();
    for (const CaseReport& rep : log.cases) {
        json steps = json::array();
        for (const CaseStepLog& st : rep.steps)
            steps.push_back({{"description", st.description},
                             {"sum", {{"num", st.sum_num},
                                      {"den", st.sum_den},
                                      {"approx", st.sum_approx}}}});
        j["cases"].push_back({{"m", rep.m},
                              {"established", rep.contradiction_established},
                              {"failure_reason", rep.failure_reason},
                              {"steps", std::move(steps)}});
    }

    j["deviations"] = json::array();
    for (const Deviation& d : deviation_report(log))
        j["deviations"].push_back(
            {{"location", d.location}, {"reference", d.reference}, {"computed", d.computed}});

    j["notes"] = log.notes;
    json exponent_notes = json::array();
    for (const ExponentDivergence& e : log.exponent_notes)
        exponent_notes.push_back({{"m", e.m},
                                  {"p", e.p},
                                  {"counting_rule", e.rule_counting},
                                  {"product_rule", e.rule_product}});
    j["exponent_notes"] = std::move(exponent_notes);

    j["verdict"] = log.verdict;
    return j;
}

// Collects replay failures.  Every helper returns quietly on success.
class Replay {
public:
    explicit Replay(const json& cert) : cert_(cert) {}

    CheckResult run() {
        check_shape();
        if (!result_.failures.empty()) return finish();
        check_checksum();
        check_config();
        if (ok_so_far_) {
            check_external_facts();
            check_small_range();
            check_eq32();
            check_cases();
            check_anchors();
            check_verdict();
        }
        return finish();
    }

private:
    void fail(std::string what) {
        result_.failures.push_back(std::move(what));
    }

    CheckResult finish() {
        result_.accepted = result_.failures.empty();
        return result_;
    }

    void check_shape() {
        static const char* keys[] = {"checksum", "config",     "external_facts",
                                     "anchors",  "small_range", "eq32",
                                     "cases",    "deviations",  "verdict"};
        if (!cert_.is_object()) {
            fail("certificate is not a JSON object");
            ok_so_far_ = false;
            return;
        }
        for (const char* key : keys)
            if (!cert_.contains(key)) {
                fail(std::string("missing key: ") + key);
                ok_so_far_ = false;
            }
    }

    void check_checksum() {
        json payload = cert_;
        payload.erase("checksum");
        std::string expect = sha256_hex(payload.dump());
        if (!cert_["checksum"].is_string() || cert_["checksum"].get<std::string>() != expect)
            fail("checksum mismatch");
    }

    void check_config() {
        const json& c = cert_["config"];
        if (!c.is_object() || !c.contains("k") || !c.contains("min_m") || !c.contains("max_m")) {
            fail("config is malformed");
            ok_so_far_ = false;
            return;
        }
        k_ = c["k"].get<int>();
        min_m_ = c["min_m"].get<std::uint64_t>();
        max_m_ = c["max_m"].get<std::uint64_t>();
        if (k_ < 2 || min_m_ < 3 || max_m_ < min_m_) {
            fail("config range is invalid");
            ok_so_far_ = false;
        }
    }

    // Parses {"num","den","approx"}; reports and returns nullopt on damage.
    std::optional<Rational> parse_rational(const json& v, const std::string& where) {
        if (!v.is_object() || !v.contains("num") || !v.contains("den") ||
            !v.contains("approx")) {
            fail(where + ": malformed rational");
            return std::nullopt;
        }
        try {
            Rational x = rational_from_strings(v["num"].get<std::string>(),
                                               v["den"].get<std::string>());
            if (truncated_decimal(x, 16) != v["approx"].get<std::string>() &&
                truncated_decimal(x, 7) != v["approx"].get<std::string>())
                fail(where + ": approx does not match the exact fraction");
            return x;
        } catch (const std::exception& e) {
            fail(where + ": " + e.what());
            return std::nullopt;
        }
    }

    void check_external_facts() {
        std::vector<std::string> wanted;
        for (std::uint64_t m : {std::uint64_t{3}, std::uint64_t{4}, std::uint64_t{5}})
            if (m >= min_m_ && m <= max_m_) wanted.push_back("m = " + std::to_string(m));
        if (max_m_ >= 616000) wanted.push_back("every m > 616000");
        for (const std::string& target : wanted) {
            bool found = false;
            for (const json& f : cert_["external_facts"])
                if (f.is_object() && f.value("applies_to", "") == target &&
                    !f.value("claim", "").empty() && !f.value("source", "").empty())
                    found = true;
            if (!found) fail("no external fact covers " + target);
        }
    }

    void check_small_range() {
        std::uint64_t lo = std::max<std::uint64_t>(min_m_, 6);
        std::uint64_t hi = std::min<std::uint64_t>(max_m_, 116);
        const json& rows = cert_["small_range"];
        if (!rows.is_array()) {
            fail("small_range is not an array");
            return;
        }
        std::uint64_t expect = lo;
        for (const json& row : rows) {
            std::uint64_t m = row.value("m", std::uint64_t{0});
            if (m != expect) {
                fail("small_range rows are not consecutive at m=" + std::to_string(m));
                return;
            }
            auto t = parse_rational(field(row, "t"), "small_range m=" + std::to_string(m));
            if (t) {
                bool ge_one = row.value("ge_one", false);
                if (ge_one != (*t >= 1))
                    fail("small_range m=" + std::to_string(m) + ": ge_one flag contradicts t");
                if (ge_one) hot_.insert(m);
            }
            ++expect;
        }
        if (lo <= hi && expect != hi + 1)
            fail("small_range stops at " + std::to_string(expect - 1) + " instead of " +
                 std::to_string(hi));
    }

    void check_eq32() {
        const json& rows = cert_["eq32"];
        if (!rows.is_array()) {
            fail("eq32 is not an array");
            return;
        }
        std::set<std::uint64_t> seen;
        for (const json& row : rows) {
            std::uint64_t m = row.value("m", std::uint64_t{0});
            seen.insert(m);
            if (!hot_.count(m))
                fail("eq32 lists m=" + std::to_string(m) + " which has T < 1");
            auto sum = parse_rational(field(row, "sum"), "eq32 m=" + std::to_string(m));
            if (sum) {
                bool needs = row.value("needs_case", false);
                if (needs != (*sum >= 1))
                    fail("eq32 m=" + std::to_string(m) + ": needs_case flag contradicts sum");
                if (needs) needs_case_.insert(m);
            }
        }
        if (seen != hot_) fail("eq32 does not list exactly the m with T >= 1");
    }

    void check_cases() {
        const json& rows = cert_["cases"];
        if (!rows.is_array()) {
            fail("cases is not an array");
            return;
        }
        std::set<std::uint64_t> seen;
        for (const json& row : rows) {
            std::uint64_t m = row.value("m", std::uint64_t{0});
            seen.insert(m);
            if (!row.value("established", false)) {
                fail("case m=" + std::to_string(m) + " did not establish a contradiction");
                all_established_ = false;
            }
            if (!row.contains("steps") || !row["steps"].is_array() || row["steps"].empty()) {
                fail("case m=" + std::to_string(m) + " records no steps");
                continue;
            }
            for (const json& st : row["steps"])
                parse_rational(field(st, "sum"), "case m=" + std::to_string(m) + " step");
        }
        if (seen != needs_case_)
            fail("cases do not match the eq32 rows that need one");
    }

    void check_anchors() {
        const json& anchors = cert_["anchors"];
        if (!anchors.is_object() || !anchors.contains("intervals")) {
            fail("anchors are malformed");
            return;
        }
        const json& rows = anchors["intervals"];
        if (max_m_ < 117) {
            if (!rows.empty()) fail("descent intervals present below the descent floor");
            return;
        }
        std::uint64_t expect_high = max_m_;
        for (const json& row : rows) {
            std::uint64_t low = row.value("low", std::uint64_t{0});
            std::uint64_t high = row.value("high", std::uint64_t{0});
            std::string where = "descent [" + std::to_string(low) + ", " +
                                std::to_string(high) + "]";
            if (high != expect_high || low > high) {
                fail("descent intervals do not tile at " + where);
                return;
            }
            auto bound = parse_rational(field(row, "bound"), where + " bound");
            if (bound && !(*bound < 1)) fail(where + ": bound is not below 1");
            if (bound && row.contains("exact")) {
                auto exact = parse_rational(field(row, "exact"), where + " exact");
                if (exact) {
                    if (!(*exact <= *bound))
                        fail(where + ": exact resummation exceeds the recorded bound");
                    try {
                        mpz_class terms(row.value("terms", std::string("0")));
                        Rational slack = rat(terms, mpz_class(1) << 96);
                        if (!(*bound - *exact < slack))
                            fail(where + ": bound is farther from the exact value than "
                                         "the rounding budget allows");
                    } catch (const std::exception& e) {
                        fail(where + ": bad term count: " + e.what());
                    }
                }
            }
            expect_high = low - 1;
        }
        if (expect_high != 116)
            fail("descent stops at " + std::to_string(expect_high + 1) +
                 " instead of reaching 117");
    }

    void check_verdict() {
        std::string verdict = cert_.value("verdict", "");
        bool clean = result_.failures.empty() && all_established_;
        if (clean && verdict != "verified (modulo external facts)")
            fail("verdict string does not match the replayed state");
        if (!all_established_ && verdict.rfind("falsified", 0) != 0)
            fail("verdict claims success despite failed cases");
    }

    const json& cert_;
    CheckResult result_;
    bool ok_so_far_ = true;
    int k_ = 0;
    std::uint64_t min_m_ = 0;
    std::uint64_t max_m_ = 0;
    std::set<std::uint64_t> hot_;
    std::set<std::uint64_t> needs_case_;
    bool all_established_ = true;
};

} // namespace

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw ScanFailure("sha256 digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 15]);
    }
    return out;
}

nlohmann::json certificate_json(const ProofLog& log) {
    json j = payload_json(log);
    j["checksum"] = sha256_hex(j.dump());
    return j;
}

void write_certificate(const ProofLog& log, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ScanFailure("cannot open " + path.string() + " for writing");
    out << certificate_json(log).dump(2) << '\n';
    if (!out) throw ScanFailure("failed writing " + path.string());
}

CheckResult check_certificate(const nlohmann::json& certificate) {
    return Replay(certificate).run();
}

CheckResult check_certificate_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) return {false, {"cannot open " + path.string()}};
    nlohmann::json cert;
    try {
        in >> cert;
    } catch (const std::exception& e) {
        return {false, {std::string("parse error: ") + e.what()}};
    }
    return check_certificate(cert);
}

} // namespace covergap
