#pragma once

// Small tokenising helpers shared by the text formats.

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace randsurf {

std::vector<std::string> split_lines(std::string_view text);
/// Drops everything from the first '#'.
std::string_view strip_comment(std::string_view line);
std::vector<std::string> tokenize(std::string_view line);
std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

/// Throws ParseError(line) on malformed or out-of-range input.
std::int64_t parse_int(std::string_view s, std::size_t line,
                       std::int64_t lo = std::numeric_limits<std::int64_t>::min(),
                       std::int64_t hi = std::numeric_limits<std::int64_t>::max());
bool parse_bool(std::string_view s, std::size_t line);

} // namespace randsurf
