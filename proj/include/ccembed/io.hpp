#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ccembed {

// Shortest text form that round-trips the double exactly.
std::string format_double(double v);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

std::uint64_t fnv1a64(std::string_view data);
std::string fnv1a64_hex(std::string_view data);

// Splits one CSV line on commas; no quoting (none of our formats needs it).
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace ccembed
