#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "covergap/certificate.hpp"
#include "covergap/proof.hpp"

#include "test_support.hpp"

using namespace covergap;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const ProofLog& sample_log() {
    static ProofLog log = [] {
        ScanConfig cfg;
        cfg.min_m = 3;
        cfg.max_m = 200;
        return prove(cfg, test_support::small_table());
    }();
    return log;
}

json sample_certificate() {
    static json cert = certificate_json(sample_log());
    return cert;
}

// Re-checksums a corrupted certificate so the tamper only becomes visible
// to the replay logic, not to the integrity hash.
void refresh_checksum(json& cert) {
    json payload = cert;
    payload.erase("checksum");
    cert["checksum"] = sha256_hex(payload.dump());
}

} // namespace

TEST_CASE("sha256 matches the published test vectors") {
    CHECK(sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("a freshly assembled certificate replays clean") {
    json cert = sample_certificate();
    CheckResult result = check_certificate(cert);
    CAPTURE(result.failures);
    CHECK(result.accepted);
    CHECK(result.failures.empty());
}

TEST_CASE("file round-trip preserves acceptance") {
    fs::path path = fs::temp_directory_path() / "covergap_cert_test.json";
    write_certificate(sample_log(), path);
    CheckResult result = check_certificate_file(path);
    CAPTURE(result.failures);
    CHECK(result.accepted);
    fs::remove(path);
}

TEST_CASE("missing or unparsable files are rejected gracefully") {
    CheckResult missing = check_certificate_file("/nonexistent/cert.json");
    CHECK_FALSE(missing.accepted);

    fs::path path = fs::temp_directory_path() / "covergap_cert_garbage.json";
    std::ofstream(path) << "{not json";
    CheckResult garbage = check_certificate_file(path);
    CHECK_FALSE(garbage.accepted);
    fs::remove(path);
}

TEST_CASE("any single-field edit breaks the checksum") {
    json base = sample_certificate();

    SUBCASE("verdict") {
        json cert = base;
        cert["verdict"] = "verified";
        CHECK_FALSE(check_certificate(cert).accepted);
    }
    SUBCASE("a window sum flag") {
        json cert = base;
        cert["small_range"][0]["ge_one"] = !cert["small_range"][0]["ge_one"].get<bool>();
        CHECK_FALSE(check_certificate(cert).accepted);
    }
    SUBCASE("an interval bound") {
        json cert = base;
        cert["anchors"]["intervals"][0]["low"] =
            cert["anchors"]["intervals"][0]["low"].get<std::uint64_t>() + 1;
        CHECK_FALSE(check_certificate(cert).accepted);
    }
    SUBCASE("the checksum itself") {
        json cert = base;
        std::string sum = cert["checksum"].get<std::string>();
        sum[0] = sum[0] == 'a' ? 'b' : 'a';
        cert["checksum"] = sum;
        CHECK_FALSE(check_certificate(cert).accepted);
    }
    SUBCASE("a removed key") {
        json cert = base;
        cert.erase("eq32");
        CHECK_FALSE(check_certificate(cert).accepted);
    }
}

TEST_CASE("re-checksummed semantic corruptions are caught by replay") {
    json base = sample_certificate();

    SUBCASE("flipping a classification flag") {
        json cert = base;
        cert["small_range"][0]["ge_one"] = !cert["small_range"][0]["ge_one"].get<bool>();
        refresh_checksum(cert);
        CheckResult result = check_certificate(cert);
        CHECK_FALSE(result.accepted);
    }
    SUBCASE("claiming an unverified verdict") {
        json cert = base;
        cert["verdict"] = "falsified: nothing actually";
        refresh_checksum(cert);
        CHECK_FALSE(check_certificate(cert).accepted);
    }
    SUBCASE("dropping a case report") {
        json cert = base;
        auto& cases = cert["cases"];
        cases.erase(cases.size() - 1);
        refresh_checksum(cert);
        CHECK_FALSE(check_certificate(cert).accepted);
    }
    SUBCASE("weakening an interval bound") {
        json cert = base;
        auto& iv = cert["anchors"]["intervals"][0];
        iv["bound"]["num"] = "1";
        iv["bound"]["den"] = "1";
        iv["bound"]["approx"] = "1.0000000000000000";
        refresh_checksum(cert);
        CHECK_FALSE(check_certificate(cert).accepted);
    }
    SUBCASE("tearing a hole in the descent tiling") {
        json cert = base;
        auto& iv = cert["anchors"]["intervals"][1];
        iv["high"] = iv["high"].get<std::uint64_t>() - 1;
        refresh_checksum(cert);
        CHECK_FALSE(check_certificate(cert).accepted);
    }
    SUBCASE("forging a case establishment") {
        json cert = base;
        cert["cases"][0]["established"] = false;
        refresh_checksum(cert);
        // An unestablished case must drag the verdict down; a certificate
        // whose verdict still says verified is inconsistent.
        CHECK_FALSE(check_certificate(cert).accepted);
    }
    SUBCASE("misstating an external fact") {
        json cert = base;
        cert["external_facts"][0]["applies_to"] = "m = 99";
        refresh_checksum(cert);
        CHECK_FALSE(check_certificate(cert).accepted);
    }
    SUBCASE("a consistent value swap stays inside the trust boundary") {
        // Replacing T(6) by 2 while keeping ge_one leaves every recorded
        // cross-check intact, so the replay (which never recomputes window
        // sums) accepts.  Guarding the values themselves is the checksum's
        // job, exercised above; this pins the no-recomputation boundary.
        json cert = base;
        auto& row = cert["small_range"][0];
        row["t"]["num"] = "2";
        row["t"]["den"] = "1";
        row["t"]["approx"] = "2.0000000000000000";
        refresh_checksum(cert);
        CHECK(check_certificate(cert).accepted);
    }
}
