#include "randsurf/tables.hpp"

#include "randsurf/errors.hpp"
#include "randsurf/generators.hpp"
#include "randsurf/partition_io.hpp"
#include "randsurf/scan.hpp"
#include "randsurf/text.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace randsurf {

Arrangement TableSpec::arrangement() const { return generate(generator, generator_params); }

namespace {

const std::vector<std::string> kKeys{"c1_sq", "c2", "chi", "ratio_c", "ratio_chi"};

} // namespace

TableSpec parse_table(std::string_view text)
{
    TableSpec t;
    std::size_t lineno = 0;
    for (const std::string& raw : split_lines(text)) {
        ++lineno;
        std::vector<std::string> tok = tokenize(strip_comment(raw));
        if (tok.empty())
            continue;
        const std::string& kw = tok[0];
        std::vector<std::string> rest(tok.begin() + 1, tok.end());
        if (kw == "name" && rest.size() == 1) {
            t.name = rest[0];
        } else if (kw == "alias" && rest.size() == 1) {
            t.aliases.push_back(rest[0]);
        } else if (kw == "title") {
            t.title = join(rest, " ");
        } else if (kw == "arrangement" && !rest.empty()) {
            t.generator = rest[0];
            for (std::size_t i = 1; i < rest.size(); ++i)
                t.generator_params.push_back(parse_int(rest[i], lineno));
        } else if (kw == "columns") {
            t.columns = rest;
        } else if (kw == "row") {
            TableRow row;
            row.line = lineno;
            bool have_p = false, have_mu = false;
            for (const std::string& item : rest) {
                auto pos = item.find_first_of("=~");
                if (pos == std::string::npos || pos == 0)
                    throw ParseError(fmt::format("expected key=value, got '{}'", item), lineno);
                std::string key = item.substr(0, pos);
                std::string value = item.substr(pos + 1);
                const bool rounded = item[pos] == '~';
                if (key == "p" && !rounded) {
                    row.p = parse_int(value, lineno, 3);
                    have_p = true;
                } else if (key == "mu" && !rounded) {
                    row.partition = parse_partition_inline(value);
                    have_mu = true;
                } else if (std::find(kKeys.begin(), kKeys.end(), key) != kKeys.end()) {
                    CompareMode mode = CompareMode::Exact;
                    if (value.find('.') != std::string::npos)
                        mode = rounded ? CompareMode::Rounded : CompareMode::Truncated;
                    else if (rounded)
                        throw ParseError("'~' needs a decimal value", lineno);
                    row.expect.push_back({key, value, mode});
                } else {
                    throw ParseError(fmt::format("unknown row field '{}'", key), lineno);
                }
            }
            if (!have_p || !have_mu)
                throw ParseError("row needs p= and mu=", lineno);
            t.rows.push_back(std::move(row));
        } else {
            throw ParseError(fmt::format("unrecognised line starting with '{}'", kw), lineno);
        }
    }
    if (t.name.empty() || t.generator.empty())
        throw ParseError("table needs a name and an arrangement", 0);
    return t;
}

std::vector<std::string> table_names()
{
    std::vector<std::string> out;
    for (const auto& e : detail::embedded_tables())
        out.push_back(parse_table(e.text).name);
    return out;
}

TableSpec load_table(std::string_view name)
{
    for (const auto& e : detail::embedded_tables()) {
        TableSpec t = parse_table(e.text);
        if (t.name == name || std::find(t.aliases.begin(), t.aliases.end(), name) != t.aliases.end())
            return t;
    }
    throw PreconditionError(fmt::format("no table named '{}'", name));
}

TableCheck compare_expectation(const TableExpectation& exp, const ChernReport& r)
{
    TableCheck c;
    c.key = exp.key;
    c.expected = exp.value;
    std::optional<Rational> v;
    if (exp.key == "c1_sq")
        v = Rational(r.c1_sq);
    else if (exp.key == "c2")
        v = Rational(r.c2);
    else if (exp.key == "chi")
        v = Rational(r.chi);
    else if (exp.key == "ratio_c")
        v = r.ratio_c;
    else if (exp.key == "ratio_chi")
        v = r.ratio_chi;
    if (!v) {
        c.computed = "undefined";
        return c;
    }
    switch (exp.mode) {
    case CompareMode::Exact:
        c.computed = to_string(*v);
        c.pass = *v == parse_rational(exp.value);
        break;
    case CompareMode::Truncated:
    case CompareMode::Rounded: {
        const auto places = static_cast<int>(exp.value.size() - exp.value.find('.') - 1);
        c.computed = exp.mode == CompareMode::Truncated ? truncated_decimal(*v, places)
                                                        : rounded_decimal(*v, places);
        c.pass = c.computed == exp.value;
        break;
    }
    }
    return c;
}

bool TableResult::pass() const
{
    return !rows.empty() &&
           std::all_of(rows.begin(), rows.end(), [](const TableRowResult& r) { return r.pass; });
}

TableResult run_table(const TableSpec& spec, unsigned workers)
{
    TableResult out;
    out.spec = spec;
    const Arrangement a = spec.arrangement();
    const ResolvedArrangement ra = resolve(a);
    out.rows.resize(spec.rows.size());
    parallel_for(spec.rows.size(), workers, [&](std::size_t i) {
        const TableRow& row = spec.rows[i];
        TableRowResult res;
        res.row = row;
        PrimeModulus p(row.p);
        res.report = report(cover_for_partition(a, ra, p, row.partition));
        res.pass = true;
        for (const TableExpectation& e : row.expect) {
            res.checks.push_back(compare_expectation(e, res.report));
            res.pass = res.pass && res.checks.back().pass;
        }
        out.rows[i] = std::move(res);
    });
    return out;
}

} // namespace randsurf
