#include "rydgate/csv.hpp"

#include "rydgate/error.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rydgate::csv {

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.11e", value);
    return buf;
}

std::string format_int(long long value) { return std::to_string(value); }

namespace {

void append_field(std::string& out, const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) {
        out += field;
        return;
    }
    out += '"';
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
}

void append_row(std::string& out, const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        append_field(out, row[i]);
    }
    out += '\n';
}

}  // namespace

std::string to_string(const Table& table) {
    std::string out;
    append_row(out, table.header);
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size()) throw InvalidArgument("CSV row width differs from header");
        append_row(out, row);
    }
    return out;
}

Table parse(std::string_view text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool field_started = false;
    int line = 1;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
            continue;
        }
        if (c == '"' && !field_started) {
            quoted = true;
            field_started = true;
        } else if (c == ',') {
            record.push_back(std::move(field));
            field.clear();
            field_started = false;
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            record.push_back(std::move(field));
            field.clear();
            field_started = false;
            records.push_back(std::move(record));
            record.clear();
            ++line;
        } else {
            field += c;
            field_started = true;
        }
    }
    if (quoted) throw DataError("CSV: unterminated quoted field at line " + std::to_string(line));
    if (field_started || !record.empty()) {
        record.push_back(std::move(field));
        records.push_back(std::move(record));
    }
    if (records.empty()) throw DataError("CSV: missing header row");

    Table table;
    table.header = std::move(records.front());
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != table.header.size()) {
            throw DataError("CSV: row " + std::to_string(r + 1) + " has " + std::to_string(records[r].size()) +
                            " fields, header has " + std::to_string(table.header.size()));
        }
        table.rows.push_back(std::move(records[r]));
    }
    return table;
}

void write_file(const std::string& path, const Table& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path);
    out << to_string(table);
    if (!out) throw DataError("write failed for " + path);
}

Table read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

}  // namespace rydgate::csv
