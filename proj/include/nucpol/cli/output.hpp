// Artifact writers shared by the experiment runners.
#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "nucpol/units.hpp"

namespace nucpol::cli {

using Json = nlohmann::ordered_json;

// Numbers are written as %.16e (17 significant digits), text cells verbatim.
using Cell = std::variant<double, std::string>;

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add(std::vector<Cell> row);
    std::size_t rows() const { return rows_.size(); }

    // Comma separated, header row first, LF line endings.
    std::string render() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<Cell>> rows_;
};

std::string format_number(double v);

struct RunContext {
    std::filesystem::path out_dir = ".";
    std::string stem;
    std::size_t jobs = 1;
    bool verbose = false;
    RateUnit unit = RateUnit::rad_per_s;

    std::vector<std::string> outputs;   // file names written, in order
    std::vector<std::string> warnings;
    Json parameters = Json::object();   // resolved physical inputs, rad/s
    Json results = Json::object();      // headline numbers for the manifest

    double in(double rate) const { return to_angular(rate, unit); }
    double out(double rate) const { return from_angular(rate, unit); }

    // `<out_dir>/<stem><suffix>`
    std::filesystem::path path(const std::string& suffix) const;

    void write_csv(const std::string& suffix, const CsvTable& table);
    void write_json(const std::string& suffix, const Json& doc);
    void write_text(const std::string& suffix, const std::string& text);

    void warn(const std::string& message);
    void log(const std::string& message) const;
};

} // namespace nucpol::cli
