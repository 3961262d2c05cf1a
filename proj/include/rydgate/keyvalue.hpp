#pragma once

// Line-oriented key-value format shared by species data files and run configs.
//
//   # comment (to end of line)
//   [section]
//   key = value
//   token token token        (table row, kept verbatim as tokens)
//
// Keys are unique within a section. Lines before the first section header
// belong to the unnamed section "".

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rydgate {

struct KeyValueEntry {
    std::string value;
    int line = 0;
};

struct TableRow {
    std::vector<std::string> tokens;
    int line = 0;
};

struct KeyValueSection {
    std::string name;
    int line = 0;
    std::map<std::string, KeyValueEntry> entries;
    std::vector<TableRow> rows;

    bool has(const std::string& key) const { return entries.count(key) != 0; }
    std::optional<std::string> get(const std::string& key) const;
    /// Throws DataError (with line number) when the value is not a finite number.
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
};

class KeyValueDocument {
public:
    static KeyValueDocument parse(std::string_view text, const std::string& origin = "<input>");
    static KeyValueDocument load(const std::string& path);

    const KeyValueSection* find(const std::string& name) const;
    /// Throws DataError naming the section when absent.
    const KeyValueSection& section(const std::string& name) const;
    const std::vector<KeyValueSection>& sections() const { return sections_; }
    const std::string& origin() const { return origin_; }

private:
    std::string origin_;
    std::vector<KeyValueSection> sections_;
};

/// Parses a finite double; std::nullopt on trailing garbage or non-finite input.
std::optional<double> parse_double(std::string_view token);

std::string trim(std::string_view s);

}  // namespace rydgate
