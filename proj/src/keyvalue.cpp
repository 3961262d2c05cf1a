#include "rydgate/keyvalue.hpp"

#include "rydgate/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace rydgate {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::optional<double> parse_double(std::string_view token) {
    const std::string t = trim(token);
    if (t.empty()) return std::nullopt;
    double value = 0.0;
    const char* begin = t.data();
    const char* end = t.data() + t.size();
    if (*begin == '+') ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || !std::isfinite(value)) return std::nullopt;
    return value;
}

std::optional<std::string> KeyValueSection::get(const std::string& key) const {
    auto it = entries.find(key);
    if (it == entries.end()) return std::nullopt;
    return it->second.value;
}

double KeyValueSection::get_double(const std::string& key) const {
    auto it = entries.find(key);
    if (it == entries.end()) {
        throw DataError("section [" + name + "] (line " + std::to_string(line) + "): missing key '" + key + "'");
    }
    auto v = parse_double(it->second.value);
    if (!v) {
        throw DataError("line " + std::to_string(it->second.line) + ": key '" + key + "' expects a number, got '" +
                        it->second.value + "'");
    }
    return *v;
}

double KeyValueSection::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

KeyValueDocument KeyValueDocument::parse(std::string_view text, const std::string& origin) {
    KeyValueDocument doc;
    doc.origin_ = origin;
    doc.sections_.push_back(KeyValueSection{"", 0, {}, {}});

    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    auto fail = [&](const std::string& what) {
        throw DataError(origin + ":" + std::to_string(line_no) + ": " + what);
    };
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = trim(std::string_view(raw).substr(0, hash));
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) fail("malformed section header '" + line + "'");
            const std::string name = trim(std::string_view(line).substr(1, line.size() - 2));
            for (const auto& s : doc.sections_) {
                if (s.name == name) fail("duplicate section [" + name + "]");
            }
            doc.sections_.push_back(KeyValueSection{name, line_no, {}, {}});
            continue;
        }

        auto& current = doc.sections_.back();
        const auto eq = line.find('=');
        if (eq != std::string::npos) {
            const std::string key = trim(std::string_view(line).substr(0, eq));
            const std::string value = trim(std::string_view(line).substr(eq + 1));
            if (key.empty()) fail("empty key");
            if (key.find_first_of(" \t") != std::string::npos) fail("key '" + key + "' contains whitespace");
            if (current.entries.count(key)) fail("duplicate key '" + key + "'");
            current.entries.emplace(key, KeyValueEntry{value, line_no});
            continue;
        }

        TableRow row;
        row.line = line_no;
        std::istringstream tokens(line);
        for (std::string tok; tokens >> tok;) row.tokens.push_back(tok);
        current.rows.push_back(std::move(row));
    }
    return doc;
}

KeyValueDocument KeyValueDocument::load(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse(buf.str(), path);
}

const KeyValueSection* KeyValueDocument::find(const std::string& name) const {
    for (const auto& s : sections_) {
        if (s.name == name) return &s;
    }
    return nullptr;
}

const KeyValueSection& KeyValueDocument::section(const std::string& name) const {
    if (auto* s = find(name)) return *s;
    throw DataError(origin_ + ": missing section [" + name + "]");
}

}  // namespace rydgate
