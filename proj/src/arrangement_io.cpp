#include "randsurf/arrangement_io.hpp"

#include "randsurf/errors.hpp"
#include "randsurf/text.hpp"

#include <fmt/format.h>

#include <fstream>
#include <map>
#include <sstream>

namespace randsurf {

namespace {

std::map<std::string, std::string> key_values(const std::vector<std::string>& tokens,
                                              std::size_t from, std::size_t line)
{
    std::map<std::string, std::string> out;
    for (std::size_t i = from; i < tokens.size(); ++i) {
        auto eq = tokens[i].find('=');
        if (eq == std::string::npos || eq == 0)
            throw ParseError(fmt::format("expected key=value, got '{}'", tokens[i]), line);
        std::string key = tokens[i].substr(0, eq);
        if (!out.emplace(key, tokens[i].substr(eq + 1)).second)
            throw ParseError(fmt::format("duplicate field '{}'", key), line);
    }
    return out;
}

std::string take(std::map<std::string, std::string>& kv, const std::string& key, std::size_t line)
{
    auto it = kv.find(key);
    if (it == kv.end())
        throw ParseError(fmt::format("missing field '{}'", key), line);
    std::string v = it->second;
    kv.erase(it);
    return v;
}

void reject_extra(const std::map<std::string, std::string>& kv, std::size_t line)
{
    if (!kv.empty())
        throw ParseError(fmt::format("unknown field '{}'", kv.begin()->first), line);
}

} // namespace

Arrangement parse_arrangement(std::string_view text)
{
    Arrangement a;
    bool have_surface = false, have_blocks = false, have_flags = false;
    std::size_t lineno = 0;
    for (const std::string& raw : split_lines(text)) {
        ++lineno;
        std::vector<std::string> tok = tokenize(strip_comment(raw));
        if (tok.empty())
            continue;
        const std::string& kw = tok[0];
        if (kw == "surface") {
            if (have_surface)
                throw ParseError("surface declared twice", lineno);
            if (tok.size() < 4)
                throw ParseError("expected 'surface NAME c1_sq=N c2=N'", lineno);
            std::vector<std::string> name_tokens(tok.begin() + 1, tok.end() - 2);
            std::vector<std::string> fields(tok.end() - 2, tok.end());
            auto kv = key_values(fields, 0, lineno);
            a.surface.name = join(name_tokens, " ");
            a.surface.c1_sq = parse_int(take(kv, "c1_sq", lineno), lineno);
            a.surface.c2 = parse_int(take(kv, "c2", lineno), lineno);
            reject_extra(kv, lineno);
            have_surface = true;
        } else if (kw == "blocks") {
            if (have_blocks)
                throw ParseError("blocks declared twice", lineno);
            if (tok.size() != 2)
                throw ParseError("expected 'blocks N'", lineno);
            a.blocks = static_cast<int>(parse_int(tok[1], lineno, 1, 1'000'000));
            have_blocks = true;
        } else if (kw == "flags") {
            if (have_flags)
                throw ParseError("flags declared twice", lineno);
            auto kv = key_values(tok, 1, lineno);
            if (kv.count("line_arrangement"))
                a.line_arrangement = parse_bool(take(kv, "line_arrangement", lineno), lineno);
            reject_extra(kv, lineno);
            have_flags = true;
        } else if (kw == "curve") {
            if (tok.size() < 2)
                throw ParseError("expected 'curve ID genus=.. self_int=.. block=.. u=..'", lineno);
            auto kv = key_values(tok, 2, lineno);
            CurveDecl c;
            c.id = tok[1];
            c.genus = parse_int(take(kv, "genus", lineno), lineno);
            c.self_int = parse_int(take(kv, "self_int", lineno), lineno);
            c.block = static_cast<int>(parse_int(take(kv, "block", lineno), lineno, -1'000'000, 1'000'000));
            c.u = kv.count("u") ? parse_int(take(kv, "u", lineno), lineno) : 1;
            reject_extra(kv, lineno);
            a.curves.push_back(std::move(c));
        } else if (kw == "point") {
            a.points.push_back({std::vector<std::string>(tok.begin() + 1, tok.end())});
        } else {
            throw ParseError(fmt::format("unknown keyword '{}'", kw), lineno);
        }
    }
    if (!have_surface)
        throw ParseError("no surface declaration", 0);
    return a;
}

std::string serialize_arrangement(const Arrangement& a)
{
    std::string out;
    out += fmt::format("surface {} c1_sq={} c2={}\n", a.surface.name, a.surface.c1_sq, a.surface.c2);
    out += fmt::format("blocks {}\n", a.blocks);
    out += fmt::format("flags line_arrangement={}\n", a.line_arrangement ? "true" : "false");
    for (const CurveDecl& c : a.curves)
        out += fmt::format("curve {} genus={} self_int={} block={} u={}\n", c.id, c.genus, c.self_int,
                           c.block, c.u);
    for (const PointDecl& p : a.points)
        out += fmt::format("point {}\n", join(p.curves, " "));
    return out;
}

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError(fmt::format("cannot open '{}'", path), 0);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, std::string_view text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ParseError(fmt::format("cannot write '{}'", path), 0);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out)
        throw ParseError(fmt::format("write to '{}' failed", path), 0);
}

Arrangement read_arrangement_file(const std::string& path)
{
    return parse_arrangement(read_text_file(path));
}

} // namespace randsurf
