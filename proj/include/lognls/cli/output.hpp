#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "lognls/cli/scenario.hpp"

namespace lognls::cli {

/// "lognls <version>"
std::string version_string();

/// 17 significant digits, the round-trip precision of a double.
std::string format_real(double v);

/// Column table written as CSV behind two comment lines carrying the code
/// version and the scenario hash.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> columns);
    void add_row(const std::vector<double>& values);
    std::size_t rows() const { return rows_.size(); }
    void write(const std::filesystem::path& path, const Scenario& sc) const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<double>> rows_;
};

/// JSON object pre-filled with version, scenario name and hash.
nlohmann::ordered_json json_header(const Scenario& sc);

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& doc);

/// Axis suffixes for vector columns: {"x"} or {"x", "y"}.
std::vector<std::string> axis_names(int dim);

} // namespace lognls::cli
