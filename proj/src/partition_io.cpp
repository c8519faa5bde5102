#include "randsurf/partition_io.hpp"

#include "randsurf/errors.hpp"
#include "randsurf/text.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace randsurf {

PartitionFile parse_partition(std::string_view text)
{
    PartitionFile out;
    std::size_t lineno = 0;
    for (const std::string& raw : split_lines(text)) {
        ++lineno;
        std::vector<std::string> tok = tokenize(strip_comment(raw));
        if (tok.empty())
            continue;
        if (tok[0] == "p") {
            if (out.p || tok.size() != 2)
                throw ParseError("expected a single 'p N' line", lineno);
            out.p = parse_int(tok[1], lineno, 1);
        } else if (tok[0] == "block") {
            if (tok.size() < 2)
                throw ParseError("empty block", lineno);
            std::vector<std::int64_t> mu;
            for (std::size_t i = 1; i < tok.size(); ++i)
                mu.push_back(parse_int(tok[i], lineno, 1));
            out.solution.blocks.push_back(std::move(mu));
        } else {
            throw ParseError(fmt::format("unknown keyword '{}'", tok[0]), lineno);
        }
    }
    if (out.solution.blocks.empty())
        throw ParseError("no block lines", 0);
    return out;
}

std::string serialize_partition(std::int64_t p, const PartitionSolution& sol)
{
    std::string out = fmt::format("p {}\n", p);
    for (const auto& block : sol.blocks)
        out += fmt::format("block {}\n", fmt::join(block, " "));
    return out;
}

PartitionSolution parse_partition_inline(std::string_view text)
{
    PartitionSolution sol;
    for (const std::string& part : split(text, ';')) {
        std::vector<std::int64_t> mu;
        for (const std::string& item : split(part, '+'))
            mu.push_back(parse_int(item, 0, 1));
        sol.blocks.push_back(std::move(mu));
    }
    return sol;
}

std::string format_partition_inline(const PartitionSolution& sol)
{
    std::vector<std::string> parts;
    for (const auto& block : sol.blocks)
        parts.push_back(fmt::format("{}", fmt::join(block, "+")));
    return join(parts, ";");
}

} // namespace randsurf
