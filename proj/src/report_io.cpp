#include "randsurf/report_io.hpp"

#include "randsurf/partition_io.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace randsurf {

RunManifest::RunManifest(std::string command)
{
    fields_.emplace_back("tool", fmt::format("randsurf {}", kToolVersion));
    fields_.emplace_back("command", std::move(command));
}

RunManifest& RunManifest::set(const std::string& key, std::string value)
{
    for (auto& [k, v] : fields_)
        if (k == key) {
            v = std::move(value);
            return *this;
        }
    fields_.emplace_back(key, std::move(value));
    return *this;
}

std::string RunManifest::comment_block() const
{
    std::string out;
    for (const auto& [k, v] : fields_)
        out += fmt::format("# {}: {}\n", k, v);
    return out;
}

nlohmann::ordered_json RunManifest::json() const
{
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [k, v] : fields_)
        j[k] = v;
    return j;
}

std::string format_ratio(const std::optional<Rational>& r, int digits)
{
    if (!r)
        return "undefined";
    return fmt::format("{} ({}...)", to_string(*r), truncated_decimal(*r, digits));
}

namespace {

std::string ratio_or_empty(const std::optional<Rational>& r, int digits)
{
    return r ? truncated_decimal(*r, digits) : std::string("undefined");
}

nlohmann::ordered_json ratio_json(const std::optional<Rational>& r)
{
    if (!r)
        return nullptr;
    return {{"exact", to_string(*r)}, {"decimal", truncated_decimal(*r, 6)}};
}

} // namespace

nlohmann::ordered_json report_json(const ChernReport& r)
{
    nlohmann::ordered_json j;
    j["p"] = r.p;
    j["chi"] = to_string(r.chi);
    j["c1_sq"] = to_string(r.c1_sq);
    j["c2"] = to_string(r.c2);
    j["ratio_c"] = ratio_json(r.ratio_c);
    j["ratio_chi"] = ratio_json(r.ratio_chi);
    j["log_c1_sq"] = r.log.c1bar_sq;
    j["log_c2"] = r.log.c2bar;
    j["log_ratio"] = ratio_json(r.log.ratio());
    j["error_terms"] = {{"SCF", to_string(r.error_terms.SCF)},
                        {"CCF", to_string(r.error_terms.CCF)},
                        {"LCF", r.error_terms.LCF}};
    j["nodes"] = r.node_total;
    j["good"] = r.good;
    nlohmann::ordered_json off = nlohmann::ordered_json::array();
    for (const NodeResidue& n : r.offending)
        off.push_back({{"i", n.i}, {"j", n.j}, {"q", n.q}, {"count", n.count}});
    j["offending_nodes"] = off;
    j["bounds"] = {{"asserted", r.bounds.asserted},
                   {"scf", r.bounds.scf},
                   {"lcf", r.bounds.lcf},
                   {"ccf", r.bounds.ccf}};
    j["bounds_ok"] = r.bounds_ok;
    return j;
}

std::string report_text(const ChernReport& r)
{
    std::string out;
    out += fmt::format("p            {}\n", r.p);
    out += fmt::format("chi          {}\n", to_string(r.chi));
    out += fmt::format("c1^2         {}\n", to_string(r.c1_sq));
    out += fmt::format("c2           {}\n", to_string(r.c2));
    out += fmt::format("c1^2/c2      {}\n", format_ratio(r.ratio_c));
    out += fmt::format("c1^2/chi     {}\n", format_ratio(r.ratio_chi));
    out += fmt::format("log c1^2     {}\n", r.log.c1bar_sq);
    out += fmt::format("log c2       {}\n", r.log.c2bar);
    out += fmt::format("log ratio    {}\n", format_ratio(r.log.ratio()));
    out += fmt::format("SCF          {}\n", to_string(r.error_terms.SCF));
    out += fmt::format("CCF          {}\n", to_string(r.error_terms.CCF));
    out += fmt::format("LCF          {}\n", r.error_terms.LCF);
    out += fmt::format("nodes        {}\n", r.node_total);
    out += fmt::format("good         {} ({} offending node(s))\n", r.good ? "yes" : "no", r.offending.size());
    out += fmt::format("bounds       scf={} lcf={} ccf={} asserted={} ok={}\n", r.bounds.scf, r.bounds.lcf,
                       r.bounds.ccf, r.bounds.asserted, r.bounds_ok);
    return out;
}

std::string csv_header() { return "p,partition,chi,c1_sq,c2,ratio_c,ratio_chi,good,tries\n"; }

std::string csv_row(const ChernReport& r, const PartitionSolution& sol, std::int64_t tries)
{
    return fmt::format("{},{},{},{},{},{},{},{},{}\n", r.p, format_partition_inline(sol), to_string(r.chi),
                       to_string(r.c1_sq), to_string(r.c2), ratio_or_empty(r.ratio_c, 6),
                       ratio_or_empty(r.ratio_chi, 6), r.good ? "true" : "false", tries);
}

std::string scan_csv(const ScanResult& s, const RunManifest& m)
{
    std::string out = m.comment_block();
    for (const ScanSkip& k : s.skipped)
        out += fmt::format("# skipped p={}: {}\n", k.p, k.reason);
    out += csv_header();
    for (const ScanSample& x : s.samples)
        out += csv_row(x.report, x.solution, x.tries);
    return out;
}

std::string scan_summary_csv(const ScanResult& s, const RunManifest& m)
{
    std::string out = m.comment_block();
    out += fmt::format("# log ratio: {}\n", format_ratio(s.log_ratio, 6));
    out += "p,samples,min,median,max,deviation\n";
    for (const ScanRow& r : s.rows)
        out += fmt::format("{},{},{},{},{},{}\n", r.p, r.samples, truncated_decimal(r.min, 6),
                           truncated_decimal(r.median, 6), truncated_decimal(r.max, 6),
                           truncated_decimal(r.deviation, 6));
    return out;
}

nlohmann::ordered_json scan_json(const ScanResult& s)
{
    nlohmann::ordered_json j;
    j["log_c1_sq"] = s.log.c1bar_sq;
    j["log_c2"] = s.log.c2bar;
    j["log_ratio"] = to_string(s.log_ratio);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const ScanRow& r : s.rows)
        rows.push_back({{"p", r.p},
                        {"samples", r.samples},
                        {"min", to_string(r.min)},
                        {"median", to_string(r.median)},
                        {"max", to_string(r.max)},
                        {"deviation", truncated_decimal(r.deviation, 6)}});
    j["rows"] = rows;
    nlohmann::ordered_json samples = nlohmann::ordered_json::array();
    for (const ScanSample& x : s.samples) {
        nlohmann::ordered_json e = report_json(x.report);
        e["index"] = x.index;
        e["seed"] = std::to_string(x.seed);
        e["partition"] = format_partition_inline(x.solution);
        e["tries"] = x.tries;
        samples.push_back(e);
    }
    j["samples"] = samples;
    nlohmann::ordered_json skipped = nlohmann::ordered_json::array();
    for (const ScanSkip& k : s.skipped)
        skipped.push_back({{"p", k.p}, {"reason", k.reason}});
    j["skipped"] = skipped;
    return j;
}

std::string table_text(const TableResult& t)
{
    std::string out = fmt::format("{} [{}]\n", t.spec.title, t.spec.name);
    std::vector<std::vector<std::string>> cells;
    std::vector<std::string> head{"p", "partition"};
    for (const std::string& c : t.spec.columns) {
        head.push_back(c + " expected");
        head.push_back(c + " computed");
    }
    head.push_back("status");
    cells.push_back(head);
    for (const TableRowResult& r : t.rows) {
        std::vector<std::string> line{std::to_string(r.row.p), format_partition_inline(r.row.partition)};
        for (const std::string& col : t.spec.columns) {
            std::string exp, got;
            for (const TableCheck& c : r.checks)
                if (c.key == col) {
                    exp += (exp.empty() ? "" : " ") + c.expected;
                    got += (got.empty() ? "" : " ") + c.computed;
                }
            line.push_back(exp);
            line.push_back(got);
        }
        line.push_back(r.pass ? "PASS" : "FAIL");
        cells.push_back(line);
    }
    std::vector<std::size_t> width(head.size(), 0);
    for (const auto& row : cells)
        for (std::size_t i = 0; i < row.size(); ++i)
            width[i] = std::max(width[i], row[i].size());
    for (const auto& row : cells) {
        std::string ln;
        for (std::size_t i = 0; i < row.size(); ++i)
            ln += i + 1 < row.size() ? fmt::format("{:<{}}  ", row[i], width[i]) : row[i];
        out += ln + "\n";
    }
    std::size_t passed = static_cast<std::size_t>(
        std::count_if(t.rows.begin(), t.rows.end(), [](const TableRowResult& r) { return r.pass; }));
    out += fmt::format("{}/{} rows PASS\n", passed, t.rows.size());
    return out;
}

std::string table_csv(const TableResult& t)
{
    std::string out = "table,p,partition,key,expected,computed,status\n";
    for (const TableRowResult& r : t.rows)
        for (const TableCheck& c : r.checks)
            out += fmt::format("{},{},{},{},{},{},{}\n", t.spec.name, r.row.p,
                               format_partition_inline(r.row.partition), c.key, c.expected, c.computed,
                               c.pass ? "PASS" : "FAIL");
    return out;
}

nlohmann::ordered_json table_json(const TableResult& t)
{
    nlohmann::ordered_json j;
    j["table"] = t.spec.name;
    j["title"] = t.spec.title;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const TableRowResult& r : t.rows) {
        nlohmann::ordered_json checks = nlohmann::ordered_json::array();
        for (const TableCheck& c : r.checks)
            checks.push_back(
                {{"key", c.key}, {"expected", c.expected}, {"computed", c.computed}, {"pass", c.pass}});
        rows.push_back({{"p", r.row.p},
                        {"partition", format_partition_inline(r.row.partition)},
                        {"checks", checks},
                        {"pass", r.pass}});
    }
    j["rows"] = rows;
    j["pass"] = t.pass();
    return j;
}

} // namespace randsurf
