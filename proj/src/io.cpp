#include "lgsim/io.hpp"

#include <cstdio>
#include <fstream>

#include "lgsim/errors.hpp"

namespace lgsim {

std::string format_sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    return buf;
}

std::string to_csv(const CsvTable& table) {
    std::string out;
    for (const auto& [key, value] : table.metadata)
        out += "# " + key + ": " + value + "\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ",";
        out += table.columns[c];
    }
    out += "\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ",";
            out += format_sci(row[c]);
        }
        out += "\n";
    }
    return out;
}

nlohmann::json to_json_rows(const CsvTable& table) {
    nlohmann::json meta = nlohmann::json::object();
    for (const auto& [key, value] : table.metadata) meta[key] = value;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t c = 0; c < row.size() && c < table.columns.size(); ++c)
            obj[table.columns[c]] = row[c];
        rows.push_back(obj);
    }
    return nlohmann::json{{"metadata", meta}, {"rows", rows}};
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << contents;
    if (!out) throw IoError("write failed: " + path);
}

nlohmann::json to_json(const ViolationReport& report) {
    nlohmann::json intervals = nlohmann::json::array();
    for (const auto& iv : report.violation_intervals)
        intervals.push_back({{"t_start", iv.t_start}, {"t_end", iv.t_end}});
    return nlohmann::json{
        {"which", to_string(report.which)},
        {"k_max", report.k_max},
        {"t_at_max", report.t_at_max},
        {"violation_intervals", intervals},
        {"total_violation_time", report.total_violation_time},
        {"violation_eps", report.violation_eps},
        {"xi", report.xi},
        {"violated", report.violated()},
    };
}

nlohmann::json to_json(const SystemParams& p) {
    return nlohmann::json{
        {"omega0", p.omega0},
        {"rabi", p.rabi},
        {"gamma0", p.gamma0},
        {"beta", p.beta},
        {"zero_temperature", p.zero_temperature},
        {"squeeze_s", p.squeeze_s},
        {"squeeze_theta", p.squeeze_theta},
    };
}

}  // namespace lgsim
