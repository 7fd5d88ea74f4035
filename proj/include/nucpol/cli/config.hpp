// Run configuration: a small sectioned key = value format.
//
//     # comment
//     experiment = rabi
//     unit = Hz
//
//     [model]
//     g = 106.8
//     kappa_vuv = 1000
//
//     [scan]
//     n_values = 100, 200, 300
//
// Keys before the first section header belong to the unnamed top section.
// Every key must be read by the experiment; leftovers are reported as unknown.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nucpol/errors.hpp"

namespace nucpol::cli {

// Malformed or incomplete configuration; the runner exits with status 2.
class ConfigError : public Error {
public:
    using Error::Error;
};

class Config {
public:
    static Config parse(const std::string& text, const std::string& origin = "<config>");
    static Config load(const std::string& path);

    bool has(const std::string& section, const std::string& key) const;
    bool has_section(const std::string& section) const;

    std::string text(const std::string& section, const std::string& key) const;
    std::string text(const std::string& section, const std::string& key, const std::string& fallback) const;
    double number(const std::string& section, const std::string& key) const;
    double number(const std::string& section, const std::string& key, double fallback) const;
    long integer(const std::string& section, const std::string& key) const;
    long integer(const std::string& section, const std::string& key, long fallback) const;
    bool flag(const std::string& section, const std::string& key, bool fallback) const;
    std::vector<double> numbers(const std::string& section, const std::string& key) const;
    std::vector<long> integers(const std::string& section, const std::string& key) const;

    // Throws ConfigError naming the first key (with its line) or section that
    // no accessor asked for.
    void reject_unknown() const;

    // Every value that was read, defaults included, as config text that parses
    // back to the same run.
    std::string resolved_text() const;

    const std::string& origin() const { return origin_; }

private:
    struct Entry {
        std::string value;
        int line;
    };
    const Entry* find(const std::string& section, const std::string& key) const;
    const Entry& require(const std::string& section, const std::string& key) const;
    void record(const std::string& section, const std::string& key, const std::string& value) const;
    std::string where(const std::string& section, const std::string& key) const;

    std::string origin_;
    std::map<std::string, std::map<std::string, Entry>> sections_;
    std::vector<std::string> section_order_;
    mutable std::map<std::string, std::map<std::string, std::string>> resolved_;
    mutable std::vector<std::string> resolved_order_;
};

} // namespace nucpol::cli
