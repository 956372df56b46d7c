#include "qais/keyval.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qais/common.hpp"

namespace qais {
namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

}  // namespace

KeyValueDoc KeyValueDoc::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail_invalid("cannot open file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_text(buffer.str());
}

KeyValueDoc KeyValueDoc::parse_text(const std::string& text) {
    KeyValueDoc doc;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail_invalid("malformed section header at line " + std::to_string(line_no));
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail_invalid("expected key = value at line " + std::to_string(line_no));
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail_invalid("empty key at line " + std::to_string(line_no));
        if (!section.empty()) key = section + "." + key;
        doc.entries_[key] = value;
    }
    return doc;
}

bool KeyValueDoc::has(const std::string& key) const { return entries_.count(key) > 0; }

const std::string& KeyValueDoc::get(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) fail_invalid("missing key: " + key);
    return it->second;
}

std::string KeyValueDoc::get_or(const std::string& key, const std::string& fallback) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? fallback : it->second;
}

double KeyValueDoc::get_double(const std::string& key) const {
    std::size_t pos = 0;
    const std::string& raw = get(key);
    const double v = std::stod(raw, &pos);
    if (pos != raw.size()) fail_invalid("key " + key + " is not a number: " + raw);
    return v;
}

std::int64_t KeyValueDoc::get_int(const std::string& key) const {
    // Accept scientific notation like 1e6 for convenience on shot counts.
    const double v = get_double(key);
    const auto r = static_cast<std::int64_t>(v);
    if (static_cast<double>(r) != v) fail_invalid("key " + key + " is not an integer");
    return r;
}

std::uint64_t KeyValueDoc::get_uint(const std::string& key) const {
    const std::int64_t v = get_int(key);
    if (v < 0) fail_invalid("key " + key + " must be non-negative");
    return static_cast<std::uint64_t>(v);
}

std::vector<double> KeyValueDoc::get_doubles(const std::string& key) const {
    std::vector<double> out;
    std::istringstream in(get(key));
    double v;
    while (in >> v) out.push_back(v);
    if (!in.eof()) fail_invalid("key " + key + " has a malformed number list");
    return out;
}

std::vector<int> KeyValueDoc::get_ints(const std::string& key) const {
    std::vector<int> out;
    for (double v : get_doubles(key)) {
        const int r = static_cast<int>(v);
        if (static_cast<double>(r) != v) fail_invalid("key " + key + " has a non-integer entry");
        out.push_back(r);
    }
    return out;
}

std::vector<std::string> KeyValueDoc::get_words(const std::string& key) const {
    std::vector<std::string> out;
    std::istringstream in(get(key));
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

void KeyValueDoc::set(const std::string& key, const std::string& value) { entries_[key] = value; }

std::string format_full(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    // Prefer the shortest representation that still round-trips.
    for (int precision = 1; precision < 17; ++precision) {
        char probe[64];
        std::snprintf(probe, sizeof(probe), "%.*g", precision, value);
        double back = 0.0;
        std::sscanf(probe, "%lf", &back);
        if (back == value) return probe;
    }
    return buf;
}

std::string format_full(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ' ';
        out += format_full(values[i]);
    }
    return out;
}

}  // namespace qais
