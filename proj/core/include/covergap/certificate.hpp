#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "covergap/proof.hpp"

namespace covergap {

// Serialized form of a ProofLog: a JSON object with the keys
//   config, external_facts, anchors, small_range, eq32, cases,
//   deviations, verdict
// plus a "checksum" (SHA-256 over the canonical rendering of everything
// else).  Exact values are string-encoded integers or fractions so no
// reader ever needs floating point.  Files are UTF-8, newline-terminated.
nlohmann::json certificate_json(const ProofLog& log);

void write_certificate(const ProofLog& log, const std::filesystem::path& path);

struct CheckResult {
    bool accepted = false;
    std::vector<std::string> failures;
};

// Replay verification without recomputation: checks the checksum, then
// re-checks every recorded inequality, count, witness, and the route
// partition of [min_m, max_m].  Any single corrupted field is caught by
// the checksum; semantically relevant corruptions are also caught by the
// replay itself.
CheckResult check_certificate(const nlohmann::json& certificate);
CheckResult check_certificate_file(const std::filesystem::path& path);

// SHA-256 hex digest of a string (certificate integrity primitive).
std::string sha256_hex(const std::string& data);

} // namespace covergap
