#include "contactsplit/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace contactsplit {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& s) {
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] == '#' || s[i] == ';') return s.substr(0, i);
    return s;
}

} // namespace

Config Config::parse(std::istream& is, const std::string& origin) {
    Config cfg;
    cfg.origin_ = origin;
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(is, raw)) {
        ++line_no;
        const std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("unterminated section header", line_no);
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) throw ConfigError("empty section name", line_no);
            cfg.section_lines_.emplace(section, line_no);
            cfg.sections_[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'key = value', got '" + line + "'", line_no);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key", line_no);
        if (section.empty()) throw ConfigError("key outside any [section]", line_no);
        auto [it, inserted] = cfg.sections_[section].emplace(key, Entry{value, line_no});
        if (!inserted)
            throw ConfigError("duplicate key '" + key + "' in [" + section + "]", line_no);
    }
    return cfg;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file: " + path, 0);
    return parse(is, path);
}

bool Config::has_section(const std::string& section) const { return sections_.count(section) > 0; }

bool Config::has(const std::string& section, const std::string& key) const {
    auto it = sections_.find(section);
    return it != sections_.end() && it->second.count(key) > 0;
}

const Config::Entry& Config::entry(const std::string& section, const std::string& key) const {
    auto it = sections_.find(section);
    if (it == sections_.end()) throw ConfigError("missing section [" + section + "]", 0);
    auto kt = it->second.find(key);
    if (kt == it->second.end())
        throw ConfigError("missing key '" + key + "' in [" + section + "]",
                          section_lines_.count(section) ? section_lines_.at(section) : 0);
    return kt->second;
}

std::string Config::get_string(const std::string& section, const std::string& key) const {
    return entry(section, key).value;
}

std::string Config::get_string(const std::string& section, const std::string& key,
                               const std::string& fallback) const {
    return has(section, key) ? entry(section, key).value : fallback;
}

double Config::get_double(const std::string& section, const std::string& key) const {
    const Entry& e = entry(section, key);
    char* end = nullptr;
    const double v = std::strtod(e.value.c_str(), &end);
    if (end == e.value.c_str() || *end != '\0')
        throw ConfigError("expected a number for '" + key + "', got '" + e.value + "'", e.line);
    return v;
}

double Config::get_double(const std::string& section, const std::string& key,
                          double fallback) const {
    return has(section, key) ? get_double(section, key) : fallback;
}

long Config::get_long(const std::string& section, const std::string& key, long fallback) const {
    if (!has(section, key)) return fallback;
    const Entry& e = entry(section, key);
    char* end = nullptr;
    const long v = std::strtol(e.value.c_str(), &end, 10);
    if (end == e.value.c_str() || *end != '\0')
        throw ConfigError("expected an integer for '" + key + "', got '" + e.value + "'", e.line);
    return v;
}

int Config::get_int(const std::string& section, const std::string& key, int fallback) const {
    return static_cast<int>(get_long(section, key, fallback));
}

bool Config::get_bool(const std::string& section, const std::string& key, bool fallback) const {
    if (!has(section, key)) return fallback;
    const Entry& e = entry(section, key);
    if (e.value == "true" || e.value == "1" || e.value == "yes") return true;
    if (e.value == "false" || e.value == "0" || e.value == "no") return false;
    throw ConfigError("expected a boolean for '" + key + "', got '" + e.value + "'", e.line);
}

std::vector<std::string> Config::get_list(const std::string& section,
                                          const std::string& key) const {
    const Entry& e = entry(section, key);
    std::vector<std::string> out;
    std::string item;
    std::istringstream ss(e.value);
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    if (out.empty()) throw ConfigError("empty list for '" + key + "'", e.line);
    return out;
}

std::vector<double> Config::get_double_list(const std::string& section,
                                            const std::string& key) const {
    const Entry& e = entry(section, key);
    std::vector<double> out;
    for (const std::string& item : get_list(section, key)) {
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (end == item.c_str() || *end != '\0')
            throw ConfigError("expected a number in list '" + key + "', got '" + item + "'",
                              e.line);
        out.push_back(v);
    }
    return out;
}

void Config::check_known(const std::string& section,
                         const std::vector<std::string>& allowed) const {
    auto it = sections_.find(section);
    if (it == sections_.end()) return;
    for (const auto& [key, e] : it->second)
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw ConfigError("unknown key '" + key + "' in [" + section + "]", e.line);
}

int Config::line_of(const std::string& section, const std::string& key) const {
    return entry(section, key).line;
}

int Config::section_line(const std::string& section) const {
    auto it = section_lines_.find(section);
    return it == section_lines_.end() ? 0 : it->second;
}

std::vector<std::string> Config::sections() const {
    std::vector<std::string> out;
    for (const auto& [name, _] : sections_) out.push_back(name);
    return out;
}

} // namespace contactsplit
