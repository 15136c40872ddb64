#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace swbnet {

/// Shortest text that parses back to exactly `x`.
std::string format_double(double x);

/// Fixed notation with `digits` decimals ("C" locale).
std::string format_fixed(double x, int digits);

std::vector<std::string_view> split(std::string_view s, char sep);

/// Strips a trailing '\r' so CRLF files parse like LF files.
std::string_view chomp(std::string_view line);

}  // namespace swbnet
