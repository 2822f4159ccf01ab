#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace qabsorb::csv {

// Locale-independent; 17 significant digits by default. NaN and infinities
// print as nan, inf, -inf.
std::string format_double(double value, int significant_digits = 17);

// Parses a decimal floating-point field (locale-independent). Leading and
// trailing blanks are ignored. Throws InvalidParameter on malformed input.
double parse_double(std::string_view field);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

// Comma-separated, first line is the header. Blank lines are skipped and a
// trailing '\r' is tolerated. Throws IoError if the file cannot be read.
Table read(const std::filesystem::path& path);

std::vector<std::string> split_line(std::string_view line);

// Writes to a sibling temporary and renames it into place.
void write_atomic(const std::filesystem::path& path, std::string_view content);

} // namespace qabsorb::csv
