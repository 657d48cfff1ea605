#include "eprgates/table.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace eprgates {

std::string format_number(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

void ResultTable::add_meta(const std::string& key, const std::string& value) {
    metadata.emplace_back(key, value);
}

void ResultTable::add_meta(const std::string& key, double value) {
    metadata.emplace_back(key, format_number(value));
}

void ResultTable::add_row(std::vector<double> row) {
    if (row.size() != header.size())
        throw std::invalid_argument("ResultTable: row width does not match header");
    for (double v : row)
        if (!std::isfinite(v)) throw std::invalid_argument("ResultTable: non-finite entry");
    rows.push_back(std::move(row));
}

void write_csv(const ResultTable& table, std::ostream& out) {
    for (const auto& [key, value] : table.metadata) out << "# " << key << "=" << value << "\n";
    for (std::size_t i = 0; i < table.header.size(); ++i)
        out << table.header[i] << (i + 1 < table.header.size() ? "," : "");
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << format_number(row[i]) << (i + 1 < row.size() ? "," : "");
        out << "\n";
    }
}

std::string to_csv(const ResultTable& table) {
    std::ostringstream oss;
    write_csv(table, oss);
    return oss.str();
}

}  // namespace eprgates
