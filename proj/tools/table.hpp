#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace predpower::cli {

/// Empty cell, integer, real, text or flag.
using Cell = std::variant<std::monostate, std::int64_t, double, std::string, bool>;

enum class Format { csv, jsonl };

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row);
};

/// Shortest decimal string that reads back to the same double ("inf", "-inf", "nan" otherwise).
std::string format_double(double value);

/// CSV: header row, comma separated, LF endings. JSONL: one object per row,
/// keys in column order, empty cells omitted, non-finite reals as null.
void write_table(std::ostream& out, const Table& table, Format format);

}  // namespace predpower::cli
