#include "randsurf/text.hpp"

#include "randsurf/errors.hpp"

#include <fmt/format.h>

#include <cctype>
#include <charconv>

namespace randsurf {

std::vector<std::string> split_lines(std::string_view text)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        std::size_t end = nl == std::string_view::npos ? text.size() : nl;
        std::string_view ln = text.substr(start, end - start);
        if (!ln.empty() && ln.back() == '\r')
            ln.remove_suffix(1);
        out.emplace_back(ln);
        if (nl == std::string_view::npos)
            break;
        start = nl + 1;
    }
    return out;
}

std::string_view strip_comment(std::string_view line)
{
    auto hash = line.find('#');
    return hash == std::string_view::npos ? line : line.substr(0, hash);
}

std::vector<std::string> tokenize(std::string_view line)
{
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])))
            ++j;
        if (j > i)
            out.emplace_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

std::vector<std::string> split(std::string_view s, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t k = s.find(sep, start);
        out.emplace_back(s.substr(start, k == std::string_view::npos ? s.size() - start : k - start));
        if (k == std::string_view::npos)
            break;
        start = k + 1;
    }
    return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep)
{
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i)
            out += sep;
        out += parts[i];
    }
    return out;
}

std::int64_t parse_int(std::string_view s, std::size_t line, std::int64_t lo, std::int64_t hi)
{
    std::int64_t v = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (!s.empty() && s.front() == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (s.empty() || ec != std::errc() || ptr != last)
        throw ParseError(fmt::format("'{}' is not an integer", s), line);
    if (v < lo || v > hi)
        throw ParseError(fmt::format("{} outside [{}, {}]", v, lo, hi), line);
    return v;
}

bool parse_bool(std::string_view s, std::size_t line)
{
    if (s == "true" || s == "1")
        return true;
    if (s == "false" || s == "0")
        return false;
    throw ParseError(fmt::format("'{}' is not a boolean", s), line);
}

} // namespace randsurf
