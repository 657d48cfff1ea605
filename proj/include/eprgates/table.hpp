#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace eprgates {

/// Numeric experiment output: named columns, rows of finite values, and an
/// ordered metadata block echoing the resolved configuration.
struct ResultTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, std::string>> metadata;

    void add_meta(const std::string& key, const std::string& value);
    void add_meta(const std::string& key, double value);
    void add_row(std::vector<double> row);  // enforces width and finiteness
};

// '#'-prefixed key=value metadata lines, a header line, then CSV rows with
// 9 significant digits. Output is byte-stable for a fixed table.
void write_csv(const ResultTable& table, std::ostream& out);

std::string to_csv(const ResultTable& table);

std::string format_number(double value);

}  // namespace eprgates
