#pragma once

// Minimal RFC 4180 CSV: header row, comma separator, fields quoted only when
// they contain a comma, quote or newline. Numbers use a fixed format so files
// are byte-stable across runs and platforms.

#include <string>
#include <string_view>
#include <vector>

namespace rydgate::csv {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    bool operator==(const Table&) const = default;
};

/// 12 significant digits in scientific notation ("%.11e"); "nan" for NaN.
std::string format_number(double value);
std::string format_int(long long value);

std::string to_string(const Table& table);
/// Throws DataError on unterminated quotes or ragged rows.
Table parse(std::string_view text);

void write_file(const std::string& path, const Table& table);
Table read_file(const std::string& path);

}  // namespace rydgate::csv
