#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qais {

/**
 * Flat key-value text document with optional [section] headers. Lines are
 * `key = value`; `#` starts a comment; keys outside a section live under the
 * empty section. Lookup keys are written "section.key".
 */
class KeyValueDoc {
public:
    static KeyValueDoc parse_file(const std::string& path);
    static KeyValueDoc parse_text(const std::string& text);

    bool has(const std::string& key) const;
    const std::string& get(const std::string& key) const;
    std::string get_or(const std::string& key, const std::string& fallback) const;

    double get_double(const std::string& key) const;
    std::int64_t get_int(const std::string& key) const;
    std::uint64_t get_uint(const std::string& key) const;
    std::vector<double> get_doubles(const std::string& key) const;
    std::vector<int> get_ints(const std::string& key) const;
    std::vector<std::string> get_words(const std::string& key) const;

    void set(const std::string& key, const std::string& value);
    const std::map<std::string, std::string>& entries() const { return entries_; }

private:
    std::map<std::string, std::string> entries_;
};

/// Shortest decimal form that round-trips a double exactly.
std::string format_full(double value);

/// Space-separated full-precision doubles.
std::string format_full(const std::vector<double>& values);

}  // namespace qais
