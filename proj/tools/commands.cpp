#include "commands.hpp"

#include "randsurf/arrangement_io.hpp"
#include "randsurf/errors.hpp"
#include "randsurf/farey.hpp"
#include "randsurf/generators.hpp"
#include "randsurf/partition_io.hpp"
#include "randsurf/report_io.hpp"
#include "randsurf/scan.hpp"
#include "randsurf/tables.hpp"
#include "randsurf/text.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include <cmath>
#include <ostream>

namespace randsurf::cli {

namespace {

struct Options {
    std::string arrangement_file;
    std::string generator;
    std::int64_t p = 0;
    std::string partition_file;
    std::string mu;
    std::optional<std::uint64_t> seed;
    std::string C = "1";
    std::int64_t samples = 20;
    std::int64_t max_tries = 100;
    std::string out;
    std::string format;
    unsigned workers = 0;

    // subcommand-specific
    std::vector<std::string> positional;
    std::string primes;
    std::int64_t from = 0;
    std::int64_t to = 0;
    std::string summary;
    bool list = false;
    std::int64_t q = 0;
};

void add_source(CLI::App* app, Options& o)
{
    app->add_option("--arrangement", o.arrangement_file, "Arrangement file");
    app->add_option("--generator", o.generator, "Built-in arrangement, e.g. \"ceva 3\"");
}

void add_output(CLI::App* app, Options& o, std::vector<std::string> formats, std::string def)
{
    o.format = def;
    app->add_option("--out", o.out, "Write the result to this file");
    app->add_option("--format", o.format, "Output format")->check(CLI::IsMember(formats));
}

Arrangement load_arrangement(const Options& o, RunManifest& m)
{
    if (o.arrangement_file.empty() == o.generator.empty())
        throw PreconditionError("give exactly one of --arrangement FILE or --generator \"KIND PARAMS\"");
    if (!o.arrangement_file.empty()) {
        m.set("arrangement", o.arrangement_file);
        Arrangement a = read_arrangement_file(o.arrangement_file);
        validate(a);
        return a;
    }
    std::vector<std::string> tok = tokenize(o.generator);
    if (tok.empty())
        throw PreconditionError("empty --generator");
    std::vector<std::int64_t> params;
    for (std::size_t i = 1; i < tok.size(); ++i)
        params.push_back(parse_int(tok[i], 0, 1, 1'000'000));
    m.set("arrangement", fmt::format("generator {}", join(tok, " ")));
    return generate(tok[0], params);
}

FareyConfig farey_from(const Options& o)
{
    Rational c = parse_rational(o.C);
    if (c <= 0)
        throw PreconditionError(fmt::format("--C must be positive, got {}", o.C));
    return FareyConfig(c);
}

void emit(const Options& o, const std::string& text, std::ostream& out)
{
    if (o.out.empty())
        out << text;
    else
        write_text_file(o.out, text);
}

std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

std::string t_counts(const CombinatorialData& data)
{
    std::vector<std::string> parts;
    for (const auto& [n, t] : data.t)
        parts.push_back(fmt::format("t{}={}", n, t));
    return parts.empty() ? "none" : join(parts, " ");
}

int cmd_generate(const Options& o, std::ostream& out)
{
    if (o.positional.empty())
        throw PreconditionError(fmt::format("generate needs a kind: {}", fmt::join(generator_names(), ", ")));
    std::vector<std::int64_t> params;
    for (std::size_t i = 1; i < o.positional.size(); ++i)
        params.push_back(parse_int(o.positional[i], 0, 1, 1'000'000));
    Arrangement a = generate(o.positional[0], params);
    RunManifest m("arrangement generate");
    m.set("generator", join(o.positional, " "));
    emit(o, m.comment_block() + serialize_arrangement(a), out);
    return kOk;
}

int cmd_info(const Options& o, std::ostream& out)
{
    RunManifest m("arrangement info");
    Arrangement a = load_arrangement(o, m);
    CombinatorialData data = validate(a);
    LogChernNumbers log = log_chern_direct(a);
    ResolvedArrangement ra = resolve(a);
    if (o.format == "json") {
        nlohmann::ordered_json j;
        j["manifest"] = m.json();
        j["surface"] = a.surface.name;
        j["d"] = data.d;
        j["blocks"] = a.blocks;
        nlohmann::ordered_json t = nlohmann::ordered_json::object();
        for (const auto& [n, c] : data.t)
            t[std::to_string(n)] = c;
        j["t"] = t;
        j["log_c1_sq"] = log.c1bar_sq;
        j["log_c2"] = log.c2bar;
        j["log_ratio"] = log.ratio() ? to_string(*log.ratio()) : "undefined";
        j["exceptional"] = ra.exceptional_count();
        j["resolved_nodes"] = ra.t2_total;
        emit(o, dump(j), out);
        return kOk;
    }
    std::string text = m.comment_block();
    text += fmt::format("surface      {} (c1^2={}, c2={})\n", a.surface.name, a.surface.c1_sq, a.surface.c2);
    text += fmt::format("curves       d={} in {} block(s)\n", data.d, a.blocks);
    text += fmt::format("points       {}\n", t_counts(data));
    text += fmt::format("log c1^2     {}\n", log.c1bar_sq);
    text += fmt::format("log c2       {}\n", log.c2bar);
    text += fmt::format("log ratio    {}\n", format_ratio(log.ratio()));
    text += fmt::format("resolution   {} exceptional curve(s), {} node(s)\n", ra.exceptional_count(), ra.t2_total);
    emit(o, text, out);
    return kOk;
}

int cmd_validate(const Options& o, std::ostream& out)
{
    RunManifest m("arrangement validate");
    Arrangement a = load_arrangement(o, m);
    CombinatorialData data = validate(a);
    std::string text = m.comment_block();
    text += fmt::format("valid: d={}, {}\n", data.d, t_counts(data));
    LogChernNumbers direct = log_chern_direct(a);
    LogChernNumbers resolved = log_chern_resolved(resolve(a));
    text += fmt::format("log Chern numbers agree: {}\n",
                        direct.c1bar_sq == resolved.c1bar_sq && direct.c2bar == resolved.c2bar ? "yes" : "NO");
    if (a.line_arrangement)
        for (const DiagnosticCheck& c : diagnostics(a).checks)
            text += fmt::format("{:<20} {}  {}\n", c.name, c.pass ? "PASS" : "FAIL", c.detail);
    emit(o, text, out);
    return kOk;
}

PartitionSolution explicit_partition(const Options& o, RunManifest& m)
{
    if (!o.mu.empty()) {
        m.set("partition", o.mu);
        return parse_partition_inline(o.mu);
    }
    m.set("partition", o.partition_file);
    PartitionFile f = parse_partition(read_text_file(o.partition_file));
    if (f.p && *f.p != o.p)
        throw PreconditionError(fmt::format("partition file is for p = {}, --p is {}", *f.p, o.p));
    return f.solution;
}

int cmd_invariants(const Options& o, std::ostream& out)
{
    const int given = (o.partition_file.empty() ? 0 : 1) + (o.mu.empty() ? 0 : 1) + (o.seed ? 1 : 0);
    if (given != 1)
        throw PreconditionError("give exactly one of --partition FILE, --mu PARTITION or --seed N");
    RunManifest m("invariants");
    Arrangement a = load_arrangement(o, m);
    PrimeModulus p(o.p);
    m.set("p", std::to_string(o.p));
    FareyConfig cfg = farey_from(o);
    m.set("C", to_string(cfg.C));
    ResolvedArrangement ra = resolve(a);

    PartitionSolution sol;
    MultiplicityAssignment ma;
    std::int64_t tries = 0;
    if (o.seed) {
        m.set("seed", std::to_string(*o.seed));
        m.set("max_tries", std::to_string(o.max_tries));
        GoodSample g = sample_good(system_for(a, p), a, ra, *o.seed, o.max_tries, cfg);
        sol = std::move(g.solution);
        ma = std::move(g.assignment);
        tries = g.tries;
    } else {
        sol = explicit_partition(o, m);
        check_solution(system_for(a, p), sol);
        ma = assign(a, ra, sol, p);
    }
    ChernReport r = report(CoverSpec{p, ra, std::move(ma), cfg});

    if (o.format == "json") {
        nlohmann::ordered_json j;
        j["manifest"] = m.json();
        j["partition"] = format_partition_inline(sol);
        if (o.seed)
            j["tries"] = tries;
        j["report"] = report_json(r);
        emit(o, dump(j), out);
    } else if (o.format == "csv") {
        emit(o, m.comment_block() + csv_header() + csv_row(r, sol, tries), out);
    } else {
        std::string text = m.comment_block();
        text += fmt::format("partition    {}\n", format_partition_inline(sol));
        if (o.seed)
            text += fmt::format("tries        {}\n", tries);
        text += report_text(r);
        emit(o, text, out);
    }
    return r.bounds_ok ? kOk : kInvalid;
}

int cmd_tables(const Options& o, std::ostream& out)
{
    const std::string which = o.positional.empty() ? "all" : o.positional[0];
    std::vector<std::string> names = which == "all" ? table_names() : std::vector<std::string>{which};
    RunManifest m("tables");
    m.set("table", which);
    bool pass = true;
    std::vector<TableResult> results;
    for (const std::string& n : names) {
        results.push_back(run_table(load_table(n), o.workers));
        pass = pass && results.back().pass();
    }
    if (o.format == "json") {
        nlohmann::ordered_json j;
        j["manifest"] = m.json();
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const TableResult& t : results)
            arr.push_back(table_json(t));
        j["tables"] = arr;
        j["pass"] = pass;
        emit(o, dump(j), out);
    } else if (o.format == "csv") {
        std::string text = m.comment_block();
        for (std::size_t i = 0; i < results.size(); ++i) {
            std::string body = table_csv(results[i]);
            text += i == 0 ? body : body.substr(body.find('\n') + 1);
        }
        emit(o, text, out);
    } else {
        std::string text = m.comment_block();
        for (std::size_t i = 0; i < results.size(); ++i)
            text += (i ? "\n" : "") + table_text(results[i]);
        emit(o, text, out);
    }
    return pass ? kOk : kTableMismatch;
}

std::vector<std::int64_t> scan_primes(const Options& o)
{
    std::vector<std::int64_t> primes;
    if (!o.primes.empty()) {
        for (const std::string& s : split(o.primes, ','))
            primes.push_back(PrimeModulus(parse_int(s, 0)).value());
    } else {
        if (o.from < 3 || o.to < o.from)
            throw PreconditionError("give --primes LIST or a range --from A --to B with 3 <= A <= B");
        for (std::int64_t n = o.from; n <= o.to; ++n)
            if (is_prime(static_cast<std::uint64_t>(n)))
                primes.push_back(n);
    }
    if (primes.empty())
        throw PreconditionError("no primes to scan");
    return primes;
}

int cmd_scan(const Options& o, std::ostream& out)
{
    RunManifest m("scan");
    Arrangement a = load_arrangement(o, m);
    std::vector<std::int64_t> primes = scan_primes(o);
    ScanOptions so;
    so.samples_per_prime = o.samples;
    so.seed = o.seed.value_or(1);
    so.max_tries = o.max_tries;
    so.farey = farey_from(o);
    so.workers = o.workers;
    m.set("primes", fmt::format("{}", fmt::join(primes, ",")));
    m.set("samples", std::to_string(so.samples_per_prime));
    m.set("seed", std::to_string(so.seed));
    m.set("max_tries", std::to_string(so.max_tries));
    m.set("C", to_string(so.farey.C));
    ScanResult s = convergence_scan(a, primes, so);
    if (!o.summary.empty()) {
        RunManifest ms = m;
        ms.set("output", "summary");
        write_text_file(o.summary, scan_summary_csv(s, ms));
    }
    if (o.format == "json") {
        nlohmann::ordered_json j;
        j["manifest"] = m.json();
        j["scan"] = scan_json(s);
        emit(o, dump(j), out);
    } else {
        emit(o, scan_csv(s, m), out);
    }
    return kOk;
}

int cmd_badset(const Options& o, std::ostream& out)
{
    PrimeModulus p(o.p);
    FareyConfig cfg = farey_from(o);
    RunManifest m("badset");
    m.set("p", std::to_string(o.p));
    m.set("C", to_string(cfg.C));
    std::vector<std::int64_t> f = bad_set(p, cfg);
    const auto n = static_cast<std::int64_t>(f.size());
    const double bound = to_double(cfg.C) * std::sqrt(static_cast<double>(o.p)) *
                         (std::log(static_cast<double>(o.p)) + 2 * std::log(2.0));
    const char* verdict = "undecided";
    switch (bad_set_size_bound(n, p, cfg)) {
    case BoundVerdict::Holds: verdict = "holds"; break;
    case BoundVerdict::Violated: verdict = "violated"; break;
    case BoundVerdict::Undecided: break;
    }
    const Rational density = make_rational(n, o.p);
    if (o.format == "json") {
        nlohmann::ordered_json j;
        j["manifest"] = m.json();
        j["p"] = o.p;
        j["size"] = n;
        j["bound"] = fmt::format("{:.6f}", bound);
        j["bound_verdict"] = verdict;
        j["density"] = truncated_decimal(density, 6);
        if (o.list)
            j["members"] = f;
        emit(o, dump(j), out);
    } else {
        std::string text = m.comment_block();
        text += fmt::format("|F|          {}\n", n);
        text += fmt::format("bound        {:.6f} (C sqrt(p) (log p + 2 log 2)): {}\n", bound, verdict);
        text += fmt::format("density      {}\n", truncated_decimal(density, 6));
        if (o.list)
            text += fmt::format("members      {}\n", fmt::join(f, " "));
        emit(o, text, out);
    }
    return std::string(verdict) == "violated" ? kInvalid : kOk;
}

int cmd_numth(const Options& o, std::ostream& out)
{
    Residue q(o.q, PrimeModulus(o.p));
    NcfExpansion x = ncf_expand(q);
    RunManifest m("numth");
    m.set("q", std::to_string(o.q));
    m.set("p", std::to_string(o.p));
    std::string text = m.comment_block();
    text += fmt::format("q'           {}\n", mod_inverse(q).q());
    text += fmt::format("p/q          [{}]\n", fmt::join(x.e, ", "));
    text += fmt::format("l(q,p)       {}\n", x.length());
    text += fmt::format("s(q,p)       {}\n", to_string(dedekind_fast(q)));
    text += fmt::format("c(q,p)       {}\n", to_string(canonical_part(q)));
    text += fmt::format("F-neighbour  {}\n", is_farey_neighbour(o.q, q.modulus(), farey_from(o)) ? "yes" : "no");
    emit(o, text, out);
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Invariants of random cyclic covers of arrangements", "randsurf"};
    app.set_version_flag("--version", std::string("randsurf ") + kToolVersion);
    app.require_subcommand(1);

    CLI::App* arr = app.add_subcommand("arrangement", "Generate, inspect and validate arrangements");
    arr->require_subcommand(1);
    CLI::App* gen = arr->add_subcommand("generate", "Write a built-in arrangement");
    gen->add_option("kind", o.positional, "Generator and parameters")->required();
    gen->add_option("--out", o.out, "Write the result to this file");
    CLI::App* info = arr->add_subcommand("info", "d, t_n and log Chern numbers");
    add_source(info, o);
    add_output(info, o, {"table", "json"}, "table");
    CLI::App* val = arr->add_subcommand("validate", "Run validators and diagnostics");
    add_source(val, o);
    val->add_option("--out", o.out, "Write the result to this file");

    CLI::App* inv = app.add_subcommand("invariants", "chi, c1^2 and c2 of one cover");
    add_source(inv, o);
    inv->add_option("--p", o.p, "Prime")->required();
    inv->add_option("--partition", o.partition_file, "Partition file");
    inv->add_option("--mu", o.mu, "Inline partition, e.g. 1+2+3;4+5+6");
    inv->add_option("--seed", o.seed, "Sample a good partition with this seed");
    inv->add_option("--C", o.C, "Farey neighbourhood scale");
    inv->add_option("--max-tries", o.max_tries, "Sampling budget")->check(CLI::PositiveNumber);
    add_output(inv, o, {"table", "json", "csv"}, "table");

    CLI::App* tab = app.add_subcommand("tables", "Re-run the embedded reference tables");
    tab->add_option("name", o.positional, "Table name, alias or 'all'");
    tab->add_option("--workers", o.workers, "Worker threads (0 = all cores)");
    add_output(tab, o, {"table", "json", "csv"}, "table");

    CLI::App* scan = app.add_subcommand("scan", "Convergence of c1^2/c2 over primes");
    add_source(scan, o);
    scan->add_option("--primes", o.primes, "Comma-separated primes");
    scan->add_option("--from", o.from, "Smallest prime of a range");
    scan->add_option("--to", o.to, "Largest prime of a range");
    scan->add_option("--samples", o.samples, "Good samples per prime")->check(CLI::PositiveNumber);
    scan->add_option("--seed", o.seed, "Base seed");
    scan->add_option("--max-tries", o.max_tries, "Sampling budget per sample")->check(CLI::PositiveNumber);
    scan->add_option("--C", o.C, "Farey neighbourhood scale");
    scan->add_option("--workers", o.workers, "Worker threads (0 = all cores)");
    scan->add_option("--summary", o.summary, "Also write per-prime medians to this CSV file");
    add_output(scan, o, {"csv", "json"}, "csv");

    CLI::App* bad = app.add_subcommand("badset", "Size and members of the Farey bad set");
    bad->add_option("--p", o.p, "Prime")->required();
    bad->add_option("--C", o.C, "Farey neighbourhood scale");
    bad->add_flag("--list", o.list, "Print the members");
    bad->add_flag("--stats", "Print size, bound and density (default)");
    add_output(bad, o, {"table", "json"}, "table");

    CLI::App* nt = app.add_subcommand("numth", "Continued fraction, Dedekind sum and canonical part of q/p");
    nt->add_option("--q", o.q, "Residue")->required();
    nt->add_option("--p", o.p, "Prime")->required();
    nt->add_option("--C", o.C, "Farey neighbourhood scale");
    nt->add_option("--out", o.out, "Write the result to this file");

    std::vector<const char*> argv{"randsurf"};
    for (const std::string& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    }

    try {
        if (gen->parsed())
            return cmd_generate(o, out);
        if (info->parsed())
            return cmd_info(o, out);
        if (val->parsed())
            return cmd_validate(o, out);
        if (inv->parsed())
            return cmd_invariants(o, out);
        if (tab->parsed())
            return cmd_tables(o, out);
        if (scan->parsed())
            return cmd_scan(o, out);
        if (bad->parsed())
            return cmd_badset(o, out);
        if (nt->parsed())
            return cmd_numth(o, out);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ValidationError& e) {
        err << "invalid: " << e.what() << "\n";
        return kInvalid;
    } catch (const BudgetError& e) {
        err << "budget: " << e.what() << "\n";
        return kBudget;
    } catch (const ExhaustedTries& e) {
        err << "exhausted: " << e.what() << "\n";
        return kExhausted;
    } catch (const NonIntegralError& e) {
        err << "internal: " << e.what() << "\n";
        return kInternal;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kInvalid;
    }
    return kUsage;
}

} // namespace randsurf::cli
