#include "nucpol/cli/output.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include "nucpol/errors.hpp"

namespace nucpol::cli {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

void CsvTable::add(std::vector<Cell> row) {
    if (row.size() != header_.size()) throw InvalidArgument("CsvTable: row width does not match the header");
    rows_.push_back(std::move(row));
}

std::string CsvTable::render() const {
    std::string out;
    for (std::size_t i = 0; i < header_.size(); ++i) out += (i ? "," : "") + header_[i];
    out += '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            if (const auto* d = std::get_if<double>(&row[i]))
                out += format_number(*d);
            else
                out += std::get<std::string>(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::filesystem::path RunContext::path(const std::string& suffix) const { return out_dir / (stem + suffix); }

void RunContext::write_text(const std::string& suffix, const std::string& text) {
    const auto p = path(suffix);
    std::filesystem::create_directories(out_dir);
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write '" + p.string() + "'");
    f << text;
    if (!f) throw Error("failed writing '" + p.string() + "'");
    outputs.push_back(p.filename().string());
    log("wrote " + p.string());
}

void RunContext::write_csv(const std::string& suffix, const CsvTable& table) { write_text(suffix, table.render()); }

void RunContext::write_json(const std::string& suffix, const Json& doc) { write_text(suffix, doc.dump(2) + "\n"); }

void RunContext::warn(const std::string& message) {
    warnings.push_back(message);
    std::cerr << "warning: " << message << '\n';
}

void RunContext::log(const std::string& message) const {
    if (verbose) std::cerr << message << '\n';
}

} // namespace nucpol::cli
