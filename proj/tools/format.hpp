#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace salbound::cli {

inline constexpr const char* kUnitsHeader = "hbar = c = 1";

/// Shortest representation that round-trips to the same double.
std::string full_precision(double x);

/// Six significant digits, as shown in text tables.
std::string six_digits(double x);

std::string six_digits(const std::optional<double>& x, const std::string& missing = "-");

/// Comma-separated table with a header row. Fields containing a comma, quote
/// or newline are quoted.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    void add_row(std::vector<std::string> row);
    void write(std::ostream& os) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Left-aligned first column, right-aligned remaining columns.
class TextTable {
public:
    explicit TextTable(std::vector<std::string> header);

    void add_row(std::vector<std::string> row);
    void write(std::ostream& os) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

}  // namespace salbound::cli
