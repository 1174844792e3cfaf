#include "lognls/cli/output.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#ifndef LOGNLS_VERSION
#define LOGNLS_VERSION "dev"
#endif

namespace lognls::cli {

std::string version_string() { return std::string("lognls ") + LOGNLS_VERSION; }

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvTable::add_row(const std::vector<double>& values) {
    if (values.size() != columns_.size()) throw std::logic_error("CsvTable: row width mismatch");
    rows_.push_back(values);
}

void CsvTable::write(const std::filesystem::path& path, const Scenario& sc) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "# " << version_string() << '\n';
    out << "# scenario " << sc.name << " hash " << sc.hash() << '\n';
    for (std::size_t c = 0; c < columns_.size(); ++c) out << (c ? "," : "") << columns_[c];
    out << '\n';
    for (const auto& row : rows_) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_real(row[c]);
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

nlohmann::ordered_json json_header(const Scenario& sc) {
    nlohmann::ordered_json j;
    j["version"] = version_string();
    j["scenario"] = sc.name;
    j["scenario_hash"] = sc.hash();
    return j;
}

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << doc.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::vector<std::string> axis_names(int dim) {
    if (dim == 1) return {"x"};
    return {"x", "y"};
}

} // namespace lognls::cli
