#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace qmf {

// Everything that selects a computation. Serialized into every report so a
// result file is reproducible on its own.
struct RunConfig {
    std::string task;
    std::string family;
    std::string case_name;
    uint32_t prime = 313;
    uint32_t seed = 1;
    int level = -1;          // the i of ext, -1 when not applicable
    uint32_t trials = 0;
    uint32_t threads = 1;
    uint32_t timeout_s = 0;
    nlohmann::json to_json() const;
};

// One result row. status is one of "ok" (expectation met), "discrepancy"
// (computation finished, expectation missed), "recorded" (no expectation
// attached, value recorded as-is).
struct ReportRow {
    std::string task;
    std::string family;
    uint32_t prime = 0;
    uint32_t seed = 0;
    int level = -1;
    long long dim_kernel = -1;
    long long dim_image = -1;
    long long dim_ext = -1;
    uint64_t elapsed_ms = 0;
    std::string status;
    nlohmann::json extra;    // task-specific payload (ranks, lists, ...)
};

nlohmann::json report_json(const RunConfig& cfg, const std::vector<ReportRow>& rows);

// FNV-1a over the canonical dump with every elapsed_ms scrubbed, so repeated
// runs of the same computation hash identically.
uint64_t report_hash(const nlohmann::json& report);

void report_write(const nlohmann::json& report, const std::string& path);
nlohmann::json report_read(const std::string& path);

// Merge result files: schemas and primes must agree (a prime conflict is an
// error), rows concatenate in input order, config lists the sources. A merge
// labeled as a full suite must carry at least 12 rows.
struct MergeResult {
    bool ok = false;
    std::string error;
    nlohmann::json merged;
};
MergeResult report_merge(const std::vector<nlohmann::json>& reports, bool expect_full_suite);

} // namespace qmf
