#include "qmf/report.hpp"

#include <fstream>

#include "qmf/field.hpp" // ApiError

namespace qmf {

using nlohmann::json;

json RunConfig::to_json() const {
    return json{{"task", task},     {"family", family},   {"case", case_name},
                {"prime", prime},   {"seed", seed},       {"i", level},
                {"trials", trials}, {"threads", threads}, {"timeout_s", timeout_s}};
}

namespace {

json row_json(const ReportRow& r) {
    json j{{"task", r.task},
           {"family", r.family},
           {"prime", r.prime},
           {"seed", r.seed},
           {"i", r.level},
           {"dim_kernel", r.dim_kernel},
           {"dim_image", r.dim_image},
           {"dim_ext", r.dim_ext},
           {"elapsed_ms", r.elapsed_ms},
           {"status", r.status}};
    if (!r.extra.is_null()) j["extra"] = r.extra;
    return j;
}

void scrub_elapsed(json& j) {
    if (j.is_object()) {
        for (auto& [key, value] : j.items()) {
            if (key == "elapsed_ms")
                value = 0;
            else
                scrub_elapsed(value);
        }
    } else if (j.is_array()) {
        for (auto& value : j) scrub_elapsed(value);
    }
}

} // namespace

json report_json(const RunConfig& cfg, const std::vector<ReportRow>& rows) {
    json jrows = json::array();
    for (const ReportRow& r : rows) jrows.push_back(row_json(r));
    return json{{"schema", "1"}, {"config", cfg.to_json()}, {"rows", jrows}};
}

uint64_t report_hash(const json& report) {
    json copy = report;
    scrub_elapsed(copy);
    const std::string dump = copy.dump();
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

void report_write(const json& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ApiError("cannot open report file for writing: " + path);
    out << report.dump(2) << "\n";
    if (!out) throw ApiError("failed writing report file: " + path);
}

json report_read(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ApiError("cannot open report file: " + path);
    try {
        return json::parse(in);
    } catch (const std::exception& e) {
        throw ApiError("report file is not valid JSON: " + path + " (" + e.what() + ")");
    }
}

MergeResult report_merge(const std::vector<nlohmann::json>& reports, bool expect_full_suite) {
    MergeResult res;
    json rows = json::array();
    json sources = json::array();
    std::optional<uint64_t> prime;

    for (size_t k = 0; k < reports.size(); ++k) {
        const json& rep = reports[k];
        const std::string where = "input " + std::to_string(k);
        if (!rep.is_object() || !rep.contains("schema") || !rep.contains("config") ||
            !rep.contains("rows")) {
            res.error = where + " is not a report";
            return res;
        }
        if (rep.at("schema") != json("1")) {
            res.error = where + " has an unsupported schema";
            return res;
        }
        const json& cfg = rep.at("config");
        if (!cfg.is_object() || !cfg.contains("prime") ||
            !cfg.at("prime").is_number_unsigned()) {
            res.error = where + " has no prime in its config";
            return res;
        }
        uint64_t p = cfg.at("prime").get<uint64_t>();
        if (prime && *prime != p) {
            res.error = "conflicting primes: " + std::to_string(*prime) + " vs " +
                        std::to_string(p);
            return res;
        }
        prime = p;
        for (const json& r : rep.at("rows")) rows.push_back(r);
        sources.push_back(cfg);
    }

    if (expect_full_suite && rows.size() < 12) {
        res.error = "full suite expects at least 12 rows, got " + std::to_string(rows.size());
        return res;
    }

    json cfg{{"task", "report-merge"}, {"sources", sources}};
    cfg["prime"] = prime ? json(*prime) : json(nullptr);
    res.merged = json{{"schema", "1"}, {"config", cfg}, {"rows", rows}};
    res.ok = true;
    return res;
}

} // namespace qmf
