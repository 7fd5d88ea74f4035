#include "nucpol/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace nucpol::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool valid_name(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
    });
}

std::optional<double> to_double(const std::string& s) {
    if (s.empty()) return std::nullopt;
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (errno == ERANGE || end != s.c_str() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    return out;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

Config Config::parse(const std::string& text, const std::string& origin) {
    Config cfg;
    cfg.origin_ = origin;
    std::string section;
    cfg.sections_[section];
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        auto fail = [&](const std::string& msg) {
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": " + msg);
        };
        if (line.front() == '[') {
            if (line.back() != ']') fail("unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (!valid_name(section)) fail("invalid section name '" + section + "'");
            if (cfg.sections_.count(section)) fail("duplicate section [" + section + "]");
            cfg.sections_[section];
            cfg.section_order_.push_back(section);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail("expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!valid_name(key)) fail("invalid key '" + key + "'");
        if (value.empty()) fail("empty value for '" + key + "'");
        auto& entries = cfg.sections_[section];
        if (entries.count(key)) fail("duplicate key '" + key + "'");
        entries[key] = {value, line_no};
    }
    return cfg;
}

Config Config::load(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str(), path);
}

const Config::Entry* Config::find(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    const auto e = s->second.find(key);
    return e == s->second.end() ? nullptr : &e->second;
}

std::string Config::where(const std::string& section, const std::string& key) const {
    const std::string name = section.empty() ? key : section + "." + key;
    const Entry* e = find(section, key);
    return e ? origin_ + ":" + std::to_string(e->line) + ": '" + name + "'" : origin_ + ": '" + name + "'";
}

const Config::Entry& Config::require(const std::string& section, const std::string& key) const {
    const Entry* e = find(section, key);
    if (!e) throw ConfigError(where(section, key) + " is required but missing");
    return *e;
}

void Config::record(const std::string& section, const std::string& key, const std::string& value) const {
    if (!resolved_.count(section)) resolved_order_.push_back(section);
    resolved_[section][key] = value;
}

bool Config::has(const std::string& section, const std::string& key) const { return find(section, key) != nullptr; }

bool Config::has_section(const std::string& section) const { return sections_.count(section) != 0; }

std::string Config::text(const std::string& section, const std::string& key) const {
    const auto& v = require(section, key).value;
    record(section, key, v);
    return v;
}

std::string Config::text(const std::string& section, const std::string& key, const std::string& fallback) const {
    return has(section, key) ? text(section, key) : (record(section, key, fallback), fallback);
}

double Config::number(const std::string& section, const std::string& key) const {
    const auto& e = require(section, key);
    const auto v = to_double(e.value);
    if (!v) throw ConfigError(where(section, key) + " must be a finite number, got '" + e.value + "'");
    record(section, key, format_double(*v));
    return *v;
}

double Config::number(const std::string& section, const std::string& key, double fallback) const {
    if (has(section, key)) return number(section, key);
    record(section, key, format_double(fallback));
    return fallback;
}

long Config::integer(const std::string& section, const std::string& key) const {
    const auto& e = require(section, key);
    const auto v = to_double(e.value);
    if (!v || std::floor(*v) != *v || std::abs(*v) > 1e15)
        throw ConfigError(where(section, key) + " must be an integer, got '" + e.value + "'");
    record(section, key, std::to_string(static_cast<long>(*v)));
    return static_cast<long>(*v);
}

long Config::integer(const std::string& section, const std::string& key, long fallback) const {
    if (has(section, key)) return integer(section, key);
    record(section, key, std::to_string(fallback));
    return fallback;
}

bool Config::flag(const std::string& section, const std::string& key, bool fallback) const {
    if (!has(section, key)) {
        record(section, key, fallback ? "true" : "false");
        return fallback;
    }
    const auto& e = require(section, key);
    if (e.value != "true" && e.value != "false")
        throw ConfigError(where(section, key) + " must be true or false, got '" + e.value + "'");
    record(section, key, e.value);
    return e.value == "true";
}

std::vector<double> Config::numbers(const std::string& section, const std::string& key) const {
    const auto& e = require(section, key);
    std::vector<double> out;
    std::string resolved;
    for (const auto& item : split_list(e.value)) {
        const auto v = to_double(item);
        if (!v) throw ConfigError(where(section, key) + ": '" + item + "' is not a finite number");
        out.push_back(*v);
        resolved += (resolved.empty() ? "" : ", ") + format_double(*v);
    }
    record(section, key, resolved);
    return out;
}

std::vector<long> Config::integers(const std::string& section, const std::string& key) const {
    const auto& e = require(section, key);
    std::vector<long> out;
    std::string resolved;
    for (const auto& item : split_list(e.value)) {
        const auto v = to_double(item);
        if (!v || std::floor(*v) != *v || std::abs(*v) > 1e15)
            throw ConfigError(where(section, key) + ": '" + item + "' is not an integer");
        out.push_back(static_cast<long>(*v));
        resolved += (resolved.empty() ? "" : ", ") + std::to_string(out.back());
    }
    record(section, key, resolved);
    return out;
}

void Config::reject_unknown() const {
    for (const auto& [section, entries] : sections_) {
        for (const auto& [key, entry] : entries) {
            const auto s = resolved_.find(section);
            if (s == resolved_.end() || !s->second.count(key)) {
                const std::string name = section.empty() ? key : section + "." + key;
                throw ConfigError(origin_ + ":" + std::to_string(entry.line) + ": unknown key '" + name + "'");
            }
        }
        if (!section.empty() && entries.empty() && !resolved_.count(section))
            throw ConfigError(origin_ + ": unknown or empty section [" + section + "]");
    }
}

std::string Config::resolved_text() const {
    std::ostringstream os;
    auto emit = [&](const std::string& section) {
        const auto s = resolved_.find(section);
        if (s == resolved_.end()) return;
        if (!section.empty()) os << "\n[" << section << "]\n";
        for (const auto& [key, value] : s->second) os << key << " = " << value << '\n';
    };
    emit("");
    for (const auto& section : resolved_order_)
        if (!section.empty()) emit(section);
    return os.str();
}

} // namespace nucpol::cli
