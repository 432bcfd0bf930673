// Tabular output: records and figure series as CSV.

#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "qfilter/experiments.hpp"

namespace qfilter {

using Cell = std::variant<double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

// 12 significant digits, shortest general form, '.' decimal point regardless
// of locale. Negative zero prints as 0.
inline std::string format_number(double x) {
    if (x == 0.0) return "0";
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 12);
    return std::string(buf.data(), res.ptr);
}

inline std::string format_cell(const Cell& cell) {
    if (const auto* d = std::get_if<double>(&cell)) return format_number(*d);
    return std::get<std::string>(cell);
}

inline void write_csv(std::ostream& os, const Table& table) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) os << (c ? "," : "") << table.columns[c];
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << format_cell(row[c]);
        os << '\n';
    }
}

inline Table records_table(const std::vector<SweepRecord>& records) {
    Table t{{"state", "k", "gamma_t", "c12", "c13", "c23", "g12", "g13", "g23", "success_prob"}, {}};
    t.rows.reserve(records.size());
    for (const auto& r : records)
        t.rows.push_back({std::string(to_string(r.state_name)), r.k, r.gamma_t, r.c12, r.c13, r.c23, r.g12, r.g13,
                          r.g23, r.success_prob});
    return t;
}

} // namespace qfilter
