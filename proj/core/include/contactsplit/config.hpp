#pragma once

#include "contactsplit/errors.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace contactsplit {

/// Flat sectioned key = value text. `#` and `;` start comments; keys are
/// unique per section; every lookup failure carries the offending line.
class Config {
  public:
    static Config parse_file(const std::string& path);
    static Config parse(std::istream& is, const std::string& origin = "<stream>");

    bool has_section(const std::string& section) const;
    bool has(const std::string& section, const std::string& key) const;

    std::string get_string(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    long get_long(const std::string& section, const std::string& key, long fallback) const;
    int get_int(const std::string& section, const std::string& key, int fallback) const;
    bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
    std::vector<std::string> get_list(const std::string& section, const std::string& key) const;
    std::vector<double> get_double_list(const std::string& section, const std::string& key) const;

    /// Rejects unknown keys in `section` (typo guard); `allowed` lists every
    /// recognized key. Throws ConfigError naming the line of the intruder.
    void check_known(const std::string& section, const std::vector<std::string>& allowed) const;

    int line_of(const std::string& section, const std::string& key) const;
    int section_line(const std::string& section) const;
    std::vector<std::string> sections() const;

  private:
    struct Entry {
        std::string value;
        int line;
    };
    std::map<std::string, std::map<std::string, Entry>> sections_;
    std::map<std::string, int> section_lines_;
    std::string origin_;

    const Entry& entry(const std::string& section, const std::string& key) const;
};

} // namespace contactsplit
