// SPDX-License-Identifier: MIT
#include <charconv>
#include <stdexcept>
#include <system_error>

#include <json.hpp>

#include "cooltrace/result_table.hpp"

namespace cooltrace {

void ResultTable::add_row(std::vector<double> row) {
    if (row.size() != columns.size())
        throw std::invalid_argument("row width does not match the column count");
    rows.push_back(std::move(row));
}

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc()) throw std::runtime_error("double formatting failed");
    return std::string(buf, ptr);
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

namespace {

// RFC-4180: quote a field only when it contains a delimiter, quote or line
// break; literal quotes are doubled.
std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string quoted = "\"";
    for (char c : field) {
        quoted += c;
        if (c == '"') quoted += '"';
    }
    quoted += '"';
    return quoted;
}

}  // namespace

void write_csv(const ResultTable& table, std::ostream& out) {
    for (const auto& [key, value] : table.meta) out << "# " << key << ": " << value << '\n';
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out << ',';
        out << csv_escape(table.columns[c]);
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            out << format_double(row[c]);
        }
        out << '\n';
    }
}

void write_json(const ResultTable& table, std::ostream& out) {
    nlohmann::ordered_json doc;
    doc["meta"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : table.meta) doc["meta"][key] = value;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < row.size(); ++c) obj[table.columns[c]] = row[c];
        doc["rows"].push_back(std::move(obj));
    }
    out << doc.dump(2) << '\n';
}

void write_table(const ResultTable& table, TableFormat format, std::ostream& out) {
    switch (format) {
        case TableFormat::kCsv: write_csv(table, out); return;
        case TableFormat::kJson: write_json(table, out); return;
    }
    throw std::logic_error("unknown table format");
}

}  // namespace cooltrace
