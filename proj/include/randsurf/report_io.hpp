#pragma once

// Rendering of reports, scans and tables as text, CSV and JSON, each carrying
// a run manifest. Nothing here reads the clock, so equal inputs give equal bytes.

#include "randsurf/covers.hpp"
#include "randsurf/scan.hpp"
#include "randsurf/tables.hpp"

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace randsurf {

inline constexpr const char* kToolVersion = RANDSURF_VERSION;

/// Ordered key/value record of what produced an output.
class RunManifest {
public:
    explicit RunManifest(std::string command);

    RunManifest& set(const std::string& key, std::string value);
    const std::vector<std::pair<std::string, std::string>>& fields() const noexcept { return fields_; }

    /// "# key: value" lines.
    std::string comment_block() const;
    nlohmann::ordered_json json() const;

private:
    std::vector<std::pair<std::string, std::string>> fields_;
};

/// "n/d (1.966...)" style rendering, "undefined" for an empty ratio.
std::string format_ratio(const std::optional<Rational>& r, int digits = 3);

nlohmann::ordered_json report_json(const ChernReport& r);
std::string report_text(const ChernReport& r);

std::string csv_header();
std::string csv_row(const ChernReport& r, const PartitionSolution& sol, std::int64_t tries);

std::string scan_csv(const ScanResult& s, const RunManifest& m);
std::string scan_summary_csv(const ScanResult& s, const RunManifest& m);
nlohmann::ordered_json scan_json(const ScanResult& s);

std::string table_text(const TableResult& t);
std::string table_csv(const TableResult& t);
nlohmann::ordered_json table_json(const TableResult& t);

} // namespace randsurf
