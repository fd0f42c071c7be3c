// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace cooltrace {

inline constexpr std::string_view kToolVersion = "0.1.0";

enum class TableFormat { kCsv, kJson };

/// Rectangular numeric table plus string metadata. Emitters are byte-stable:
/// rows keep their insertion order, metadata keys are sorted, and floats use
/// shortest round-trip formatting.
struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::map<std::string, std::string> meta;

    void add_row(std::vector<double> row);
};

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

/// FNV-1a 64-bit, used for config hashes embedded in output metadata.
std::uint64_t fnv1a64(std::string_view bytes);

/// '#'-prefixed metadata lines, then an RFC-4180 header row and data rows
/// ('.' decimal separator, '\n' line ends). gnuplot-compatible.
void write_csv(const ResultTable& table, std::ostream& out);

/// {"meta": {...}, "rows": [{column: value, ...}, ...]}.
void write_json(const ResultTable& table, std::ostream& out);

void write_table(const ResultTable& table, TableFormat format, std::ostream& out);

}  // namespace cooltrace
