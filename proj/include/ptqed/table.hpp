// Tabular results: rectangular typed tables with ordered metadata, emitted as
// CSV (with '#' metadata lines) or as a single JSON object.
#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ptqed {

using Cell = std::variant<double, long long, std::string>;

struct ResultTable {
    std::vector<std::pair<std::string, std::string>> metadata;  // ordered key/value
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    // Appends one row; its width must match columns.
    void add_row(std::vector<Cell> row);
};

// 17-significant-digit decimal form of a double: parses back to the same bits.
std::string format_double(double value);

// CSV rendering: '#'-prefixed metadata lines, a header row, then data rows.
// Quoting follows RFC 4180: fields containing comma, quote, or newline are
// double-quoted with embedded quotes doubled; the decimal separator is always
// '.'. Bytes depend only on the table contents.
std::string to_csv(const ResultTable& table);

// One JSON object: {"metadata": {...}, "columns": [...], "rows": [[...]]}.
std::string to_json(const ResultTable& table);

// Writes content to path, throwing on I/O failure.
void write_file(const std::string& path, const std::string& content);

// FNV-1a 64-bit hash of a string, hex-encoded.
std::string fnv1a_hex(const std::string& text);

}  // namespace ptqed
