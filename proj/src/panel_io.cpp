#include "stackcast/panel_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "stackcast/errors.hpp"

namespace stackcast {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

double parse_cell(const std::string& cell, const std::string& file, const std::string& col) {
    if (cell.empty()) return std::numeric_limits<double>::quiet_NaN();
    char* end = nullptr;
    double v = std::strtod(cell.c_str(), &end);
    if (end == cell.c_str() || *end != '\0')
        throw SchemaMismatch("non-numeric value '" + cell + "' in column '" + col + "' of " + file);
    return v;
}

// EU DST switch hours in UTC for a given year: last Sunday of March / October, 01:00 UTC.
std::int64_t last_sunday(int year, unsigned month) {
    std::int64_t last_day = days_from_civil(year, month + 1, 1) - 1;
    return last_day - (weekday(last_day) + 1) % 7;
}

struct DstWindow {
    HourStamp start_utc;  // CEST begins
    HourStamp end_utc;    // CEST ends
};

DstWindow dst_window(int year) {
    return {last_sunday(year, 3) * 24 + 1, last_sunday(year, 10) * 24 + 1};
}

bool in_summer(HourStamp utc) {
    int y;
    unsigned m, d;
    civil_from_days(day_of(utc), y, m, d);
    DstWindow w = dst_window(y);
    return utc >= w.start_utc && utc < w.end_utc;
}

// Local CET/CEST wall-clock hour -> UTC hour(s). The repeated autumn hour maps
// to two UTC hours (CEST first); the skipped spring hour does not exist.
std::vector<HourStamp> cet_to_utc(HourStamp local) {
    HourStamp cet = local - 1;   // UTC+1 candidate
    HourStamp cest = local - 2;  // UTC+2 candidate
    bool cet_ok = !in_summer(cet);
    bool cest_ok = in_summer(cest);
    if (cet_ok && cest_ok) return {cest, cet};  // ambiguous (autumn)
    if (cet_ok) return {cet};
    if (cest_ok) return {cest};
    throw SchemaMismatch("local time " + format_hour(local) + " does not exist (DST gap)");
}

}  // namespace

SchemaMap SchemaMap::from_json(const nlohmann::json& j, const std::string& base_dir) {
    SchemaMap s;
    s.timezone = j.value("timezone", std::string("utc"));
    if (s.timezone != "utc" && s.timezone != "cet")
        throw SchemaMismatch("unsupported timezone '" + s.timezone + "'");
    if (!j.contains("files") || !j["files"].is_array())
        throw SchemaMismatch("schema map needs a 'files' array");
    for (const auto& f : j["files"]) {
        SchemaFile sf;
        sf.path = f.at("path").get<std::string>();
        if (!base_dir.empty() && !std::filesystem::path(sf.path).is_absolute())
            sf.path = (std::filesystem::path(base_dir) / sf.path).string();
        sf.frequency = f.value("frequency", std::string("hourly"));
        if (sf.frequency != "hourly" && sf.frequency != "daily")
            throw SchemaMismatch("unsupported frequency '" + sf.frequency + "'");
        for (const auto& [col, key] : f.at("columns").items())
            sf.columns[col] = key.get<std::string>();
        s.files.push_back(std::move(sf));
    }
    for (const auto& [key, policy] : j.value("fill", nlohmann::json::object()).items()) {
        std::string p = policy.get<std::string>();
        if (p != "previous_hour" && p != "reject")
            throw SchemaMismatch("unknown fill policy '" + p + "' for series '" + key + "'");
        s.fill[key] = p;
    }
    return s;
}

SchemaMap SchemaMap::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaMismatch("cannot open schema file: " + path);
    nlohmann::json j;
    in >> j;
    return from_json(j, std::filesystem::path(path).parent_path().string());
}

nlohmann::json SchemaMap::to_json() const {
    nlohmann::json file_list = nlohmann::json::array();
    for (const auto& f : files) {
        nlohmann::json e;
        e["path"] = f.path;
        e["frequency"] = f.frequency;
        e["columns"] = f.columns;
        file_list.push_back(std::move(e));
    }
    nlohmann::json j;
    j["timezone"] = timezone;
    j["files"] = std::move(file_list);
    j["fill"] = fill;
    return j;
}

HourlyPanel load_panel(const SchemaMap& schema, LoadReport* report) {
    // series key -> (utc hour -> value); DST-duplicated local hours hold the
    // average of both readings on both UTC hours.
    std::map<std::string, std::map<HourStamp, double>> raw;
    std::map<std::string, std::size_t> dst_fills;

    for (const auto& file : schema.files) {
        std::ifstream in(file.path);
        if (!in) throw SchemaMismatch("cannot open data file: " + file.path);
        std::string line;
        if (!std::getline(in, line)) throw SchemaMismatch("empty data file: " + file.path);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<std::string> header = split_csv_line(line);

        int ts_col = -1;
        std::map<int, std::string> col_to_key;
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == "ts") ts_col = static_cast<int>(i);
            auto it = file.columns.find(header[i]);
            if (it != file.columns.end()) col_to_key[static_cast<int>(i)] = it->second;
        }
        if (ts_col < 0) throw SchemaMismatch("no 'ts' column in " + file.path);
        for (const auto& [col, key] : file.columns) {
            bool found = false;
            for (const auto& h : header) found |= (h == col);
            if (!found)
                throw SchemaMismatch("declared column '" + col + "' missing from " + file.path);
        }

        // (local ts -> values) in file order, so ambiguous DST rows stay paired.
        std::map<std::string, std::vector<std::pair<HourStamp, double>>> rows;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            std::vector<std::string> cells = split_csv_line(line);
            if (static_cast<int>(cells.size()) <= ts_col)
                throw SchemaMismatch("short row in " + file.path);
            HourStamp t = parse_hour(cells[ts_col]);
            if (file.frequency == "daily" && hour_of_day(t) != 0)
                throw SchemaMismatch("daily file " + file.path + " has a non-midnight timestamp");
            for (const auto& [ci, key] : col_to_key) {
                double v = static_cast<std::size_t>(ci) < cells.size()
                               ? parse_cell(cells[ci], file.path, header[ci])
                               : std::numeric_limits<double>::quiet_NaN();
                rows[key].emplace_back(t, v);
            }
        }

        for (auto& [key, series_rows] : rows) {
            auto& dst = raw[key];
            for (std::size_t i = 0; i < series_rows.size(); ++i) {
                auto [t, v] = series_rows[i];
                int hours_covered = file.frequency == "daily" ? 24 : 1;
                std::vector<HourStamp> targets;
                if (schema.timezone == "cet" && file.frequency == "hourly") {
                    targets = cet_to_utc(t);
                } else {
                    targets = {t};
                }
                if (targets.size() == 2) {
                    // Ambiguous local hour: average with a paired duplicate row
                    // if one exists, else reuse the single reading for both.
                    double v2 = v;
                    if (i + 1 < series_rows.size() && series_rows[i + 1].first == t) {
                        v2 = series_rows[i + 1].second;
                        ++i;
                    }
                    double avg = std::isnan(v) ? v2 : (std::isnan(v2) ? v : 0.5 * (v + v2));
                    for (HourStamp u : targets) {
                        dst[u] = avg;
                        ++dst_fills[key];
                    }
                    continue;
                }
                HourStamp base = targets[0];
                for (int hh = 0; hh < hours_covered; ++hh) {
                    HourStamp u = base + hh;
                    if (dst.count(u))
                        throw SchemaMismatch("duplicate timestamp " + format_hour(u) +
                                             " for series '" + key + "'");
                    dst[u] = v;
                }
            }
        }
    }

    if (raw.empty()) throw SchemaMismatch("schema map binds no series");

    HourStamp first = std::numeric_limits<HourStamp>::max();
    HourStamp last = std::numeric_limits<HourStamp>::min();
    for (const auto& [key, vals] : raw) {
        if (vals.empty()) throw GapError("series '" + key + "' has no values");
        first = std::min(first, vals.begin()->first);
        last = std::max(last, vals.rbegin()->first);
    }

    std::size_t n = static_cast<std::size_t>(last - first + 1);
    std::vector<HourStamp> hours(n);
    for (std::size_t i = 0; i < n; ++i) hours[i] = first + static_cast<HourStamp>(i);

    std::map<std::string, std::vector<double>> series;
    std::map<std::string, std::size_t> filled, coverage;
    for (auto& [key, vals] : raw) {
        auto fit = schema.fill.find(key);
        bool fill_prev = fit != schema.fill.end() && fit->second == "previous_hour";
        std::vector<double> col(n);
        for (std::size_t i = 0; i < n; ++i) {
            HourStamp t = first + static_cast<HourStamp>(i);
            auto it = vals.find(t);
            bool missing = it == vals.end() || std::isnan(it->second);
            if (!missing) {
                col[i] = it->second;
                ++coverage[key];
            } else if (fill_prev && i > 0) {
                col[i] = col[i - 1];
                ++filled[key];
            } else {
                throw GapError("series '" + key + "' missing at " + format_hour(t) +
                               " and no fill policy applies");
            }
        }
        series[key] = std::move(col);
    }

    HourlyPanel panel(std::move(hours), std::move(series));
    for (const auto& [k, c] : filled) panel.fill_counts[k] += c;
    for (const auto& [k, c] : dst_fills) panel.fill_counts[k] += c;
    if (report) {
        report->rows = n;
        report->first = first;
        report->last = last;
        report->coverage = coverage;
        report->filled = panel.fill_counts;
    }
    return panel;
}

std::string LoadReport::to_text() const {
    std::ostringstream out;
    out << "rows: " << rows << "  range: " << format_hour(first) << " .. " << format_hour(last)
        << "\n";
    for (const auto& [key, cov] : coverage) {
        out << "  " << key << ": " << cov << " read";
        auto it = filled.find(key);
        if (it != filled.end() && it->second > 0) out << ", " << it->second << " filled";
        out << "\n";
    }
    return out.str();
}

void write_panel(const HourlyPanel& panel, const std::string& csv_path) {
    std::ofstream out(csv_path);
    if (!out) throw Error("cannot open '" + csv_path + "' for writing");
    out << "ts";
    for (const auto& [key, _] : panel.all_series()) out << ',' << key;
    out << "\n";
    char buf[64];
    for (std::size_t i = 0; i < panel.size(); ++i) {
        out << format_hour(panel.hours()[i]);
        for (const auto& [key, vals] : panel.all_series()) {
            std::snprintf(buf, sizeof buf, "%.17g", vals[i]);
            out << ',' << buf;
        }
        out << "\n";
    }
}

SchemaMap single_file_schema(const std::string& csv_path, const HourlyPanel& panel) {
    SchemaMap s;
    SchemaFile f;
    f.path = csv_path;
    for (const auto& [key, _] : panel.all_series()) f.columns[key] = key;
    s.files.push_back(std::move(f));
    return s;
}

}  // namespace stackcast
