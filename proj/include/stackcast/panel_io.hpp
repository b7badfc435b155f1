// CSV ingestion: a JSON schema map binds file columns to panel series, one
// file per logical group. Timestamps are ISO-8601 in a 'ts' column; local CET
// inputs are converted to UTC with DST hours averaged/filled. Gaps are
// rejected unless a per-series fill policy is configured.
#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "stackcast/panel.hpp"

namespace stackcast {

struct SchemaFile {
    std::string path;
    std::string frequency = "hourly";  // "hourly" | "daily" (broadcast to hours)
    std::map<std::string, std::string> columns;  // csv column -> series key
};

struct SchemaMap {
    std::string timezone = "utc";  // "utc" | "cet"
    std::vector<SchemaFile> files;
    std::map<std::string, std::string> fill;  // series key -> "previous_hour"

    static SchemaMap from_json(const nlohmann::json& j, const std::string& base_dir = "");
    static SchemaMap from_json_file(const std::string& path);
    nlohmann::json to_json() const;
};

struct LoadReport {
    std::size_t rows = 0;
    HourStamp first = 0, last = 0;
    std::map<std::string, std::size_t> coverage;  // values read from files
    std::map<std::string, std::size_t> filled;    // values synthesized by policy
    std::string to_text() const;
};

HourlyPanel load_panel(const SchemaMap& schema, LoadReport* report = nullptr);

// Writes every series into one CSV (ts + one column per key, %.17g)
// so that load_panel(single_file_schema(...)) round-trips exactly.
void write_panel(const HourlyPanel& panel, const std::string& csv_path);
SchemaMap single_file_schema(const std::string& csv_path, const HourlyPanel& panel);

}  // namespace stackcast
