#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace seernf {

// Reads a whole file; throws IoError when the path is missing or unreadable.
std::string read_file(const std::filesystem::path& path);

// Writes content to a temporary sibling file and renames it into place, so
// an interrupted run never leaves a truncated output.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

// Splits text into lines (handles \n and \r\n; no trailing empty line).
std::vector<std::string_view> split_lines(std::string_view text);

// Whitespace-separated tokens of one line; empty for blank/comment ('#') lines.
std::vector<std::string_view> tokenize(std::string_view line);

// Splits one CSV line on commas and trims surrounding whitespace per field.
// No quoting rules: fields in the formats used here never contain commas.
std::vector<std::string> split_csv(std::string_view line);

std::string_view trim(std::string_view s);

// Strict double parse; std::nullopt when the text is not a full number.
std::optional<double> parse_double(std::string_view s);

// Fixed-point with `decimals` digits, e.g. format_fixed(0.1234, 2) == "0.12".
std::string format_fixed(double v, int decimals);

// Shortest representation that round-trips the double exactly (%.17g).
std::string format_full(double v);

} // namespace seernf
