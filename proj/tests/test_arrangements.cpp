#include "randsurf/arrangement.hpp"
#include "randsurf/arrangement_io.hpp"
#include "randsurf/errors.hpp"
#include "randsurf/generators.hpp"

#include <doctest.h>

#include <map>
#include <set>

using namespace randsurf;

namespace {

// Incidence-count oracle: t_n straight from the point list.
std::map<std::int64_t, std::int64_t> count_points(const Arrangement& a)
{
    std::map<std::int64_t, std::int64_t> t;
    for (const PointDecl& p : a.points)
        ++t[static_cast<std::int64_t>(p.curves.size())];
    return t;
}

std::vector<Arrangement> every_generator_output()
{
    std::vector<Arrangement> out;
    for (int d = 3; d <= 12; ++d)
        out.push_back(gen_general_lines(d));
    for (int m = 1; m <= 12; ++m)
        out.push_back(gen_ceva(m));
    for (int m : {2, 3, 5, 7})
        out.push_back(gen_pg2(m));
    for (int m = 3; m <= 12; ++m)
        out.push_back(gen_underline_ceva(m));
    for (int d1 = 3; d1 <= 5; ++d1)
        for (int d2 = 3; d2 <= 5; ++d2)
            for (int d3 = 3; d3 <= 5; ++d3)
                out.push_back(gen_p1xp1(d1, d2, d3));
    return out;
}

ValidationCode code_of(const Arrangement& a)
{
    try {
        validate(a);
    } catch (const ValidationError& e) {
        return e.code();
    }
    FAIL("expected a validation error");
    return ValidationCode::BadPoint;
}

} // namespace

TEST_CASE("validate: named arrangements")
{
    CombinatorialData hesse = validate(gen_dual_hesse());
    CHECK(hesse.d == 9);
    CHECK(hesse.t == std::map<std::int64_t, std::int64_t>{{3, 12}});

    CombinatorialData tri = validate(gen_ceva(1));
    CHECK(tri.d == 3);
    CHECK(tri.t == std::map<std::int64_t, std::int64_t>{{2, 3}});

    CombinatorialData fano = validate(gen_pg2(2));
    CHECK(fano.d == 7);
    CHECK(fano.t == std::map<std::int64_t, std::int64_t>{{3, 7}});
}

TEST_CASE("generators: combinatorics")
{
    CHECK(validate(gen_general_lines(3)).t_n(2) == 3);
    CHECK(validate(gen_general_lines(4)).t_n(2) == 6);
    CHECK(validate(gen_general_lines(9)).t_n(2) == 36);

    CombinatorialData q = validate(gen_ceva(2));
    CHECK(q.d == 6);
    CHECK(q.t == std::map<std::int64_t, std::int64_t>{{2, 3}, {3, 4}});
    for (int m = 4; m <= 12; ++m) {
        CombinatorialData c = validate(gen_ceva(m));
        CHECK(c.d == 3 * m);
        CHECK(c.t == std::map<std::int64_t, std::int64_t>{{3, m * m}, {m, 3}});
    }
    for (int m : {2, 3, 5, 7}) {
        CombinatorialData g = validate(gen_pg2(m));
        CHECK(g.d == m * m + m + 1);
        CHECK(g.t == std::map<std::int64_t, std::int64_t>{{m + 1, m * m + m + 1}});
    }
    CHECK_THROWS_AS(gen_pg2(4), PreconditionError);
    CHECK_THROWS_AS(gen_pg2(9), PreconditionError);

    Arrangement u5 = gen_underline_ceva(5);
    CombinatorialData uc = validate(u5);
    CHECK(uc.d == 15);
    CHECK(uc.t == std::map<std::int64_t, std::int64_t>{{3, 25}});
    CHECK(u5.blocks == 3);
    for (const auto& members : u5.block_members())
        CHECK(members.size() == 5);
    CHECK(u5.surface.c1_sq == 6);
    CHECK(u5.surface.c2 == 6);

    Arrangement pp = gen_p1xp1(3, 3, 3);
    CombinatorialData pc = validate(pp);
    CHECK(pc.d == 9);
    CHECK(pc.t == std::map<std::int64_t, std::int64_t>{{2, 33}});
    CHECK(pp.blocks == 3);
}

TEST_CASE("every generator output validates and both log Chern routes agree")
{
    for (const Arrangement& a : every_generator_output()) {
        CombinatorialData data = validate(a);
        CHECK(data.t == count_points(a));
        CHECK(data.t_n(data.d) == 0);
        CHECK(data.t_n(1) == 0);
        ResolvedArrangement ra = resolve(a);
        CHECK(log_chern_direct(a) == log_chern_resolved(ra));
        auto k = static_cast<std::int64_t>(ra.exceptional_count());
        CHECK(ra.surface_Y.c2 - a.surface.c2 == k);
        CHECK(a.surface.c1_sq - ra.surface_Y.c1_sq == k);
        if (a.line_arrangement) {
            std::int64_t pairs = 0;
            for (const auto& [n, t] : data.t)
                pairs += n * (n - 1) / 2 * t;
            CHECK(pairs == data.d * (data.d - 1) / 2);
        }
    }
}

TEST_CASE("log Chern numbers")
{
    CHECK(log_chern_direct(gen_dual_hesse()) == LogChernNumbers{24, 9});
    CHECK(*log_chern_direct(gen_dual_hesse()).ratio() == make_rational(8, 3));
    CHECK(log_chern_resolved(resolve(gen_ceva(1))) == LogChernNumbers{0, 0});
    CHECK_FALSE(log_chern_resolved(resolve(gen_ceva(1))).ratio().has_value());

    for (int m = 2; m <= 12; ++m) {
        LogChernNumbers l = log_chern_direct(gen_ceva(m));
        CHECK(*l.ratio() == make_rational(5 * m * m - 6 * m - 3, 2 * m * m - 3 * m));
    }
    for (int m : {2, 3, 5, 7}) {
        LogChernNumbers l = log_chern_direct(gen_pg2(m));
        CHECK(l.c1bar_sq == 3 * (m + 1) * (m - 1) * (m - 1));
        CHECK(l.c2bar == (m + 1) * (m - 1) * (m - 1));
        CHECK(l.c1bar_sq == 3 * l.c2bar);
    }
    CHECK(log_chern_resolved(resolve(gen_underline_ceva(5))) == LogChernNumbers{71, 26});
    CHECK(log_chern_direct(gen_underline_ceva(4)) == LogChernNumbers{38, 14});
    Rational best = 0;
    int arg = 0;
    for (int m = 4; m <= 12; ++m) {
        LogChernNumbers l = log_chern_direct(gen_underline_ceva(m));
        CHECK(l.c1bar_sq == 5 * m * m - 12 * m + 6);
        CHECK(l.c2bar == 2 * m * m - 6 * m + 6);
        if (*l.ratio() > best) {
            best = *l.ratio();
            arg = m;
        }
    }
    CHECK(arg == 5);
    CHECK(best == make_rational(71, 26));
}

TEST_CASE("resolve")
{
    ResolvedArrangement h = resolve(gen_dual_hesse());
    CHECK(h.divisors.size() == 21);
    CHECK(h.self_int_total() == -39);
    CHECK(h.t2_total == 36);
    for (std::size_t i = 0; i < 9; ++i)
        CHECK(h.divisors[i].self_int == -3);
    std::set<std::size_t> seen_exc;
    for (std::size_t i = 9; i < h.divisors.size(); ++i) {
        CHECK(h.divisors[i].kind == DivisorKind::Exceptional);
        CHECK(h.divisors[i].genus == 0);
        CHECK(h.divisors[i].self_int == -1);
        CHECK(h.divisors[i].id.find('#') != std::string::npos);
    }
    // Exceptional divisors are pairwise disjoint.
    for (const auto& [pair, n] : h.nodes) {
        CHECK(pair.first < pair.second);
        CHECK_FALSE((pair.first >= 9 && pair.second >= 9));
    }

    ResolvedArrangement tri = resolve(gen_ceva(1));
    CHECK(tri.divisors.size() == 3);
    CHECK(tri.t2_total == 3);
    for (const ResolvedCurve& c : tri.divisors)
        CHECK(c.self_int == 1);

    ResolvedArrangement c5 = resolve(gen_ceva(5));
    CHECK(c5.divisors.size() == 43);
}

TEST_CASE("validation diagnostics")
{
    Arrangement base = gen_general_lines(4);
    CHECK_NOTHROW(validate(base));

    Arrangement few = base;
    few.curves.resize(2);
    few.points = {{{"L1", "L2"}}};
    few.line_arrangement = false;
    CHECK(code_of(few) == ValidationCode::TooFewCurves);

    Arrangement dpoint = gen_general_lines(3);
    dpoint.line_arrangement = false;
    dpoint.points.push_back({{"L1", "L2", "L3"}});
    CHECK(code_of(dpoint) == ValidationCode::DPoint);

    Arrangement gcd = base;
    for (auto& c : gcd.curves)
        c.u = 2;
    CHECK(code_of(gcd) == ValidationCode::BlockGcd);

    Arrangement small = gen_general_lines(5);
    small.blocks = 2;
    small.curves[3].block = 2;
    small.curves[4].block = 2;
    CHECK(code_of(small) == ValidationCode::BlockTooSmall);

    Arrangement coverage = base;
    coverage.points.pop_back();
    CHECK(code_of(coverage) == ValidationCode::LinePairCoverage);

    Arrangement twice = base;
    twice.points.push_back(twice.points.front());
    CHECK(code_of(twice) == ValidationCode::LinePairCoverage);

    Arrangement unknown = base;
    unknown.points.push_back({{"L1", "L9"}});
    CHECK(code_of(unknown) == ValidationCode::UnknownCurve);

    Arrangement dup = base;
    dup.curves[1].id = "L1";
    CHECK(code_of(dup) == ValidationCode::DuplicateCurve);

    Arrangement lone = base;
    lone.line_arrangement = false;
    lone.points.push_back({{"L1"}});
    CHECK(code_of(lone) == ValidationCode::BadPoint);

    Arrangement repeated = base;
    repeated.line_arrangement = false;
    repeated.points.push_back({{"L1", "L1"}});
    CHECK(code_of(repeated) == ValidationCode::BadPoint);

    Arrangement noether = base;
    noether.surface.c2 = 4;
    CHECK(code_of(noether) == ValidationCode::SurfaceNoether);

    Arrangement block = base;
    block.curves[0].block = 2;
    CHECK(code_of(block) == ValidationCode::BlockIndex);

    Arrangement data = base;
    data.curves[0].genus = -1;
    CHECK(code_of(data) == ValidationCode::BadCurveData);
    data = base;
    data.curves[0].u = 0;
    CHECK(code_of(data) == ValidationCode::BadCurveData);
    data = base;
    data.curves[0].id = "E#1";
    CHECK(code_of(data) == ValidationCode::BadCurveData);
}

TEST_CASE("diagnostics")
{
    DiagnosticsReport h = diagnostics(gen_dual_hesse());
    CHECK(h.all_pass());
    CHECK(h.checks.size() == 4);
    CHECK(h.checks[0].name == "hirzebruch");

    DiagnosticsReport f = diagnostics(gen_pg2(2));
    CHECK_FALSE(f.checks[0].pass);
    CHECK_FALSE(f.all_pass());

    CHECK(diagnostics(gen_general_lines(4)).all_pass());
    CHECK_THROWS_AS(diagnostics(gen_underline_ceva(5)), PreconditionError);
    for (int m : {3, 5, 7})
        CHECK_FALSE(diagnostics(gen_pg2(m)).checks[0].pass);
}

TEST_CASE("arrangement text format round-trips")
{
    for (const Arrangement& a : every_generator_output()) {
        std::string text = serialize_arrangement(a);
        Arrangement back = parse_arrangement(text);
        CHECK(back == a);
        CHECK(serialize_arrangement(back) == text);
    }
    std::string hand = R"(# a hand-written triangle
surface P2 c1_sq=9 c2=3
blocks 1
flags line_arrangement=true
curve x genus=0 self_int=1 block=1      # u defaults to 1
curve y genus=0 self_int=1 block=1 u=1
curve z genus=0 self_int=1 block=1
point x y
point y z
point x z
)";
    Arrangement t = parse_arrangement(hand);
    CHECK(validate(t).t_n(2) == 3);
    CHECK(t.surface.name == "P2");

    Arrangement named = gen_underline_ceva(4);
    CHECK(parse_arrangement(serialize_arrangement(named)).surface.name == "P2 blown up at 3 points");
}

TEST_CASE("arrangement parse errors carry line numbers")
{
    auto line_of = [](const std::string& text) {
        try {
            parse_arrangement(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return std::size_t{999};
    };
    CHECK(line_of("surface P2 c1_sq=9 c2=3\nbogus 1\n") == 2);
    CHECK(line_of("surface P2 c1_sq=9 c2=3\n\ncurve a genus=x self_int=1 block=1\n") == 3);
    CHECK(line_of("surface P2 c1_sq=9 c2=3\ncurve a genus=0 block=1\n") == 2);
    CHECK(line_of("surface P2 c1_sq=9 c2=3\ncurve a genus=0 self_int=1 block=1 colour=red\n") == 2);
    CHECK(line_of("surface P2 c1_sq=9\n") == 1);
    CHECK(line_of("surface P2 c1_sq=9 c2=3\nsurface P2 c1_sq=9 c2=3\n") == 2);
    CHECK(line_of("blocks 1\n") == 0);
    CHECK(line_of("surface P2 c1_sq=9 c2=3\nflags line_arrangement=maybe\n") == 2);
}

TEST_CASE("generate dispatch")
{
    CHECK(generate("ceva", {3}) == gen_dual_hesse());
    CHECK(generate("dual-hesse", {}) == gen_ceva(3));
    CHECK(generate("ceva-blowup", {5}) == gen_underline_ceva(5));
    CHECK(generate("p1xp1", {3, 4, 5}) == gen_p1xp1(3, 4, 5));
    CHECK_THROWS_AS(generate("ceva", {}), PreconditionError);
    CHECK_THROWS_AS(generate("nope", {1}), PreconditionError);
    CHECK_THROWS_AS(generate("general-lines", {2}), PreconditionError);
}
