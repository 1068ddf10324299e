#include "table.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string_view>

#include <json.hpp>

namespace predpower::cli {
namespace {

std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"\n\r") == std::string::npos) {
        return text;
    }
    std::string quoted = "\"";
    for (char c : text) {
        if (c == '"') {
            quoted += '"';
        }
        quoted += c;
    }
    return quoted + '"';
}

struct CsvCell {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(const std::string& v) const { return csv_field(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
};

struct JsonCell {
    std::string operator()(std::monostate) const { return "null"; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return std::isfinite(v) ? format_double(v) : "null"; }
    std::string operator()(const std::string& v) const { return nlohmann::json(v).dump(); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
};

}  // namespace

void Table::add(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
        throw std::logic_error("table row width does not match its header");
    }
    rows.push_back(std::move(row));
}

std::string format_double(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    std::array<char, 32> buffer{};
    auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    // Plain to_chars writes integral values of 1e17 and above in full, which
    // can exceed 17 significant digits.
    if (result.ec == std::errc{} && std::abs(value) >= 1e17 &&
        std::string_view(buffer.data(), result.ptr).find('e') == std::string_view::npos) {
        result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value,
                                          std::chars_format::scientific);
    }
    if (result.ec != std::errc{}) {
        throw std::runtime_error("cannot format floating-point value");
    }
    return {buffer.data(), result.ptr};
}

void write_table(std::ostream& out, const Table& table, Format format) {
    if (format == Format::csv) {
        for (std::size_t i = 0; i < table.columns.size(); ++i) {
            out << (i ? "," : "") << csv_field(table.columns[i]);
        }
        out << '\n';
        for (const auto& row : table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                out << (i ? "," : "") << std::visit(CsvCell{}, row[i]);
            }
            out << '\n';
        }
        return;
    }

    // Objects are assembled by hand so numbers use the same text as the CSV
    // output; the JSON library only escapes strings.
    for (const auto& row : table.rows) {
        out << '{';
        bool first = true;
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (std::holds_alternative<std::monostate>(row[i])) {
                continue;
            }
            out << (first ? "" : ",") << nlohmann::json(table.columns[i]).dump() << ':'
                << std::visit(JsonCell{}, row[i]);
            first = false;
        }
        out << "}\n";
    }
}

}  // namespace predpower::cli
