#include "format.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace salbound::cli {

std::string full_precision(double x) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
    return std::string(buf.data(), end);
}

std::string six_digits(double x) {
    std::array<char, 64> buf{};
    int len = std::snprintf(buf.data(), buf.size(), "%.6g", x);
    return std::string(buf.data(), static_cast<std::size_t>(len));
}

std::string six_digits(const std::optional<double>& x, const std::string& missing) {
    return x ? six_digits(*x) : missing;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + '"';
}

}  // namespace

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> row) {
    if (row.size() != header_.size()) throw std::logic_error("csv row width mismatch");
    rows_.push_back(std::move(row));
}

void CsvTable::write(std::ostream& os) const {
    auto line = [&os](const std::vector<std::string>& r) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_field(r[i]);
        os << '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
}

TextTable::TextTable(std::vector<std::string> header) : header_(std::move(header)) {}

void TextTable::add_row(std::vector<std::string> row) {
    row.resize(header_.size());
    rows_.push_back(std::move(row));
}

void TextTable::write(std::ostream& os) const {
    std::vector<std::size_t> width(header_.size());
    for (std::size_t c = 0; c < header_.size(); ++c) {
        width[c] = header_[c].size();
        for (const auto& r : rows_) width[c] = std::max(width[c], r[c].size());
    }
    auto line = [&](const std::vector<std::string>& r) {
        for (std::size_t c = 0; c < r.size(); ++c) {
            std::string pad(width[c] - r[c].size(), ' ');
            if (c == 0)
                os << r[c] << pad;
            else
                os << "  " << pad << r[c];
        }
        os << '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
}

}  // namespace salbound::cli
