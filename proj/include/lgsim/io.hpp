#ifndef LGSIM_IO_HPP
#define LGSIM_IO_HPP

// Deterministic output helpers: fixed 12-significant-digit scientific
// formatting so identical inputs give byte-identical files.

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lgsim/lgti.hpp"
#include "lgsim/params.hpp"

namespace lgsim {

// "%.11e" (12 significant digits, round-trip safe for doubles).
std::string format_sci(double v);

struct CsvTable {
    std::vector<std::pair<std::string, std::string>> metadata;  // '#' lines
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

std::string to_csv(const CsvTable& table);
nlohmann::json to_json_rows(const CsvTable& table);

// Throws IoError on failure.
void write_file(const std::string& path, const std::string& contents);

nlohmann::json to_json(const ViolationReport& report);
nlohmann::json to_json(const SystemParams& params);

}  // namespace lgsim

#endif
