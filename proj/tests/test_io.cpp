#include "commands.hpp"

#include "randsurf/arrangement_io.hpp"
#include "randsurf/errors.hpp"
#include "randsurf/farey.hpp"
#include "randsurf/generators.hpp"
#include "randsurf/partition_io.hpp"
#include "randsurf/report_io.hpp"
#include "randsurf/tables.hpp"

#include <doctest.h>
#include <fmt/format.h>

#include <algorithm>
#include <filesystem>
#include <sstream>

using namespace randsurf;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run invoke(std::vector<std::string> args)
{
    std::ostringstream out, err;
    Run r;
    r.code = cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

std::string temp_path(const std::string& name)
{
    return (std::filesystem::temp_directory_path() / ("randsurf_test_" + name)).string();
}

} // namespace

TEST_CASE("arrangement generate, info and validate")
{
    const std::string file = temp_path("ceva3.txt");
    Run g = invoke({"arrangement", "generate", "ceva", "3", "--out", file});
    REQUIRE(g.code == cli::kOk);
    std::string text = read_text_file(file);
    CHECK(contains(text, "# command: arrangement generate"));
    Arrangement a = parse_arrangement(text);
    CHECK(a == gen_ceva(3));
    CombinatorialData data = validate(a);
    CHECK(data.d == 9);
    CHECK(data.t_n(3) == 12);

    Run info = invoke({"arrangement", "info", "--arrangement", file});
    CHECK(info.code == cli::kOk);
    CHECK(contains(info.out, "log ratio    8/3"));
    CHECK(contains(info.out, "t3=12"));

    Run js = invoke({"arrangement", "info", "--generator", "pg2 3", "--format", "json"});
    REQUIRE(js.code == cli::kOk);
    auto j = nlohmann::json::parse(js.out);
    CHECK(j["d"] == 13);
    CHECK(j["log_ratio"] == "3");
    CHECK(j["manifest"]["arrangement"] == "generator pg2 3");

    Run v = invoke({"arrangement", "validate", "--generator", "dual-hesse"});
    CHECK(v.code == cli::kOk);
    CHECK(contains(v.out, "hirzebruch"));
    CHECK(contains(v.out, "log Chern numbers agree: yes"));

    CHECK(invoke({"arrangement", "generate", "pg2", "4"}).code == cli::kInvalid);
    CHECK(invoke({"arrangement", "generate", "nonsense"}).code == cli::kInvalid);
    std::filesystem::remove(file);
}

TEST_CASE("validate names the failing check and parse errors carry line numbers")
{
    const std::string file = temp_path("dpoint.txt");
    write_text_file(file, "surface P2 c1_sq=9 c2=3\nblocks 1\nflags line_arrangement=true\n"
                          "curve L1 genus=0 self_int=1 block=1\ncurve L2 genus=0 self_int=1 block=1\n"
                          "curve L3 genus=0 self_int=1 block=1\npoint L1 L2 L3\n");
    Run r = invoke({"arrangement", "validate", "--arrangement", file});
    CHECK(r.code == cli::kInvalid);
    CHECK(contains(r.err, "d-point"));

    write_text_file(file, "surface P2 c1_sq=9 c2=3\nblocks 1\ncurve L1 genus=x self_int=1 block=1\n");
    Run p = invoke({"arrangement", "info", "--arrangement", file});
    CHECK(p.code == cli::kUsage);
    CHECK(contains(p.err, "line 3"));
    std::filesystem::remove(file);

    CHECK(invoke({"arrangement", "info", "--arrangement", temp_path("missing.txt")}).code == cli::kUsage);
    CHECK(invoke({"arrangement", "info"}).code == cli::kInvalid);
}

TEST_CASE("invariants")
{
    Run r = invoke({"invariants", "--generator", "dual-hesse", "--p", "61169", "--mu",
                 "6790+6791+6792+6793+6794+6795+6796+6797+6821"});
    CHECK(r.code == cli::kOk);
    CHECK(contains(r.out, "c1^2         1464209\n"));
    CHECK(contains(r.out, "c2           633619\n"));
    CHECK(contains(r.out, "(2.310...)"));

    Run s = invoke({"invariants", "--generator", "underline-ceva 5", "--p", "61169", "--mu",
                 "1+307+7031+11109+42721;589+2007+5007+20001+33565;1009+3001+13003+17807+26349", "--format",
                 "json"});
    REQUIRE(s.code == cli::kOk);
    auto j = nlohmann::json::parse(s.out);
    CHECK(j["report"]["c1_sq"] == "4341016");
    CHECK(j["report"]["c2"] == "1595264");
    CHECK(j["report"]["ratio_c"]["exact"] == "542627/199408");

    CHECK(invoke({"invariants", "--generator", "dual-hesse", "--p", "6", "--mu", "1+5"}).code == cli::kInvalid);
    // Partition does not sum to p.
    CHECK(invoke({"invariants", "--generator", "dual-hesse", "--p", "61169", "--mu", "1+2+3+4+5+6+7+8+9"}).code ==
          cli::kInvalid);
    CHECK(invoke({"invariants", "--generator", "dual-hesse", "--p", "61169"}).code == cli::kInvalid);

    const std::string file = temp_path("partition.txt");
    write_text_file(file, serialize_partition(83, parse_partition_inline("1+2+3+5+7+11+13+17+24")));
    Run f = invoke({"invariants", "--generator", "dual-hesse", "--p", "83", "--partition", file, "--format", "csv"});
    CHECK(f.code == cli::kOk);
    CHECK(contains(f.out, csv_header()));
    CHECK(contains(f.out, "83,1+2+3+5+7+11+13+17+24,"));
    CHECK(invoke({"invariants", "--generator", "dual-hesse", "--p", "89", "--partition", file}).code ==
          cli::kInvalid);
    std::filesystem::remove(file);

    Run seeded = invoke({"invariants", "--generator", "dual-hesse", "--p", "61169", "--seed", "7"});
    CHECK(seeded.code == cli::kOk);
    CHECK(contains(seeded.out, "tries        "));
    CHECK(contains(seeded.out, "good         yes"));
    CHECK(seeded.out == invoke({"invariants", "--generator", "dual-hesse", "--p", "61169", "--seed", "7"}).out);

    Run ex = invoke({"invariants", "--generator", "dual-hesse", "--p", "23", "--seed", "1", "--max-tries", "2"});
    CHECK(ex.code == cli::kExhausted);
}

TEST_CASE("tables")
{
    Run all = invoke({"tables", "all"});
    CHECK(all.code == cli::kOk);
    CHECK(contains(all.out, "9/9 rows PASS"));
    CHECK(contains(all.out, "16/16 rows PASS"));
    CHECK(contains(all.out, "1/1 rows PASS"));
    CHECK_FALSE(contains(all.out, "FAIL"));

    Run a = invoke({"tables", "dual-hesse-fixed-p", "--format", "csv"});
    CHECK(a.code == cli::kOk);
    CHECK(contains(a.out, "table,p,partition,key,expected,computed,status\n"));
    CHECK(contains(a.out, "dual-hesse-fixed-p,61169,1+2+3+4+5+6+7+8+61133,c1_sq,1441949,1441949,PASS"));

    Run js = invoke({"tables", "ceva5-blowup", "--format", "json"});
    REQUIRE(js.code == cli::kOk);
    auto j = nlohmann::json::parse(js.out);
    CHECK(j["pass"] == true);
    CHECK(j["tables"][0]["table"] == "ceva5-blowup");

    CHECK(invoke({"tables", "no-such-table"}).code == cli::kInvalid);
    CHECK(invoke({"tables", "all", "--workers", "1"}).out == all.out);
}

TEST_CASE("table data format and comparison modes")
{
    TableSpec t = parse_table("name demo\nalias d\ntitle Demo\narrangement underline-ceva 5\ncolumns ratio_c\n"
                              "row p=61169 mu=1+307+7031+11109+42721;589+2007+5007+20001+33565;"
                              "1009+3001+13003+17807+26349 ratio_c=2.72118 ratio_c~2.72119 ratio_c=2.72119\n");
    CHECK(t.aliases == std::vector<std::string>{"d"});
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0].line == 6);
    TableResult r = run_table(t, 1);
    REQUIRE(r.rows[0].checks.size() == 3);
    // 542627/199408 = 2.7211897..: truncation gives 2.72118, rounding 2.72119.
    CHECK(r.rows[0].checks[0].pass);
    CHECK(r.rows[0].checks[1].pass);
    CHECK_FALSE(r.rows[0].checks[2].pass);
    CHECK_FALSE(r.pass());
    CHECK(contains(table_text(r), "FAIL"));
    CHECK(contains(table_text(r), "0/1 rows PASS"));

    try {
        parse_table("name x\narrangement dual-hesse\ncolumns c2\nrow p=7 mu=1+1 bogus=3\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 4);
    }
    CHECK_THROWS_AS(load_table("nope"), PreconditionError);
    CHECK(table_names().size() == 3);
    CHECK(load_table(load_table("dual-hesse-primes").aliases.at(0)).name == "dual-hesse-primes");
}

TEST_CASE("scan output is deterministic")
{
    std::vector<std::string> args{"scan", "--generator", "dual-hesse", "--primes", "10103,61169",
                                  "--samples", "4", "--seed", "11"};
    Run a = invoke(args);
    REQUIRE(a.code == cli::kOk);
    auto one = args;
    one.insert(one.end(), {"--workers", "1"});
    CHECK(invoke(one).out == a.out);
    CHECK(contains(a.out, "# seed: 11\n"));
    CHECK(contains(a.out, csv_header()));
    CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 8 + 1 + 8);

    const std::string out = temp_path("scan.csv"), summary = temp_path("summary.csv");
    auto files = args;
    files.insert(files.end(), {"--out", out, "--summary", summary});
    CHECK(invoke(files).code == cli::kOk);
    CHECK(read_text_file(out) == a.out);
    CHECK(contains(read_text_file(summary), "p,samples,min,median,max,deviation\n"));
    std::filesystem::remove(out);
    std::filesystem::remove(summary);

    auto js = args;
    js.insert(js.end(), {"--format", "json"});
    auto j = nlohmann::json::parse(invoke(js).out);
    CHECK(j["scan"]["rows"].size() == 2);
    CHECK(j["scan"]["samples"].size() == 8);

    CHECK(invoke({"scan", "--generator", "general-lines 3", "--primes", "101"}).code == cli::kInvalid);
    CHECK(invoke({"scan", "--generator", "dual-hesse", "--primes", "100"}).code == cli::kInvalid);
    CHECK(invoke({"scan", "--generator", "dual-hesse"}).code == cli::kInvalid);
}

TEST_CASE("badset")
{
    Run r = invoke({"badset", "--p", "17", "--list", "--format", "json"});
    REQUIRE(r.code == cli::kOk);
    auto j = nlohmann::json::parse(r.out);
    std::vector<std::int64_t> members = j["members"];
    std::vector<std::int64_t> oracle;
    for (std::int64_t q = 0; q < 17; ++q)
        if (is_farey_neighbour(q, PrimeModulus(17)))
            oracle.push_back(q);
    CHECK(members == oracle);
    CHECK(j["size"] == oracle.size());

    Run s = invoke({"badset", "--p", "1009", "--stats"});
    CHECK(s.code == cli::kOk);
    CHECK(contains(s.out, ": holds"));

    double prev = 2;
    for (const char* p : {"101", "1009", "10103"}) {
        auto d = nlohmann::json::parse(invoke({"badset", "--p", p, "--format", "json"}).out);
        double density = std::stod(d["density"].get<std::string>());
        CHECK(density < prev);
        prev = density;
    }
    CHECK(invoke({"badset", "--p", "15"}).code == cli::kInvalid);
    CHECK(invoke({"badset", "--p", "17", "--C", "0"}).code == cli::kInvalid);
}

TEST_CASE("numth and usage")
{
    Run n = invoke({"numth", "--q", "3", "--p", "7"});
    CHECK(n.code == cli::kOk);
    CHECK(contains(n.out, "p/q          [3, 2, 2]\n"));
    CHECK(contains(n.out, "s(q,p)       -1/14\n"));
    CHECK(invoke({"numth", "--q", "7", "--p", "7"}).code == cli::kInvalid);

    CHECK(invoke({}).code == cli::kUsage);
    CHECK(invoke({"frobnicate"}).code == cli::kUsage);
    CHECK(invoke({"--help"}).code == cli::kOk);
    CHECK(invoke({"invariants", "--generator", "dual-hesse", "--p", "seven"}).code == cli::kUsage);
}

TEST_CASE("report rendering")
{
    RunManifest m("demo");
    m.set("p", "7").set("p", "11");
    CHECK(m.comment_block() == fmt::format("# tool: randsurf {}\n# command: demo\n# p: 11\n", kToolVersion));
    CHECK(m.json()["p"] == "11");

    CHECK(format_ratio(Rational(1441949, 733435)) == "1441949/733435 (1.966...)");
    CHECK(format_ratio(std::nullopt) == "undefined");

    ChernReport r = report_for_partition(gen_dual_hesse(), PrimeModulus(61169),
                                         parse_partition_inline("1+2+3+4+5+6+7+8+61133"));
    CHECK(csv_row(r, parse_partition_inline("1+2+3+4+5+6+7+8+61133"), 3) ==
          "61169,1+2+3+4+5+6+7+8+61133,181282,1441949,733435,1.966021,7.954176,false,3\n");
    auto j = report_json(r);
    CHECK(j["chi"] == "181282");
    CHECK(j["log_ratio"]["exact"] == "8/3");
    CHECK(j["error_terms"]["LCF"].is_number());
    CHECK(contains(report_text(r), "chi          181282\n"));
}
