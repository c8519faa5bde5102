#include "randsurf/generators.hpp"

#include "randsurf/errors.hpp"
#include "randsurf/numth.hpp"

#include <fmt/format.h>

#include <array>

namespace randsurf {

SurfaceClass projective_plane() { return {"P2", 9, 3}; }
SurfaceClass p1_x_p1() { return {"P1xP1", 8, 4}; }
SurfaceClass plane_blown_up_thrice() { return {"P2 blown up at 3 points", 6, 6}; }

namespace {

CurveDecl line(std::string id) { return {std::move(id), 0, 1, 1, 1}; }

void require(bool ok, const std::string& what)
{
    if (!ok)
        throw PreconditionError(what);
}

std::string ceva_id(int pencil, int index) { return fmt::format("{}{}", "ABC"[pencil], index); }

} // namespace

Arrangement gen_general_lines(int d)
{
    require(d >= 3, fmt::format("general lines need d >= 3, got {}", d));
    Arrangement a;
    a.surface = projective_plane();
    a.line_arrangement = true;
    for (int i = 1; i <= d; ++i)
        a.curves.push_back(line(fmt::format("L{}", i)));
    for (int i = 1; i <= d; ++i)
        for (int j = i + 1; j <= d; ++j)
            a.points.push_back({{fmt::format("L{}", i), fmt::format("L{}", j)}});
    validate(a);
    return a;
}

Arrangement gen_ceva(int m)
{
    require(m >= 1, fmt::format("CEVA(m) needs m >= 1, got {}", m));
    if (m == 1)
        return gen_general_lines(3);
    Arrangement a;
    a.surface = projective_plane();
    a.line_arrangement = true;
    for (int pencil = 0; pencil < 3; ++pencil)
        for (int i = 0; i < m; ++i)
            a.curves.push_back(line(ceva_id(pencil, i)));
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y)
            a.points.push_back({{ceva_id(0, x), ceva_id(1, y), ceva_id(2, (x + y) % m)}});
    for (int pencil = 0; pencil < 3; ++pencil) {
        PointDecl centre;
        for (int i = 0; i < m; ++i)
            centre.curves.push_back(ceva_id(pencil, i));
        a.points.push_back(std::move(centre));
    }
    validate(a);
    return a;
}

Arrangement gen_dual_hesse() { return gen_ceva(3); }

Arrangement gen_pg2(int m)
{
    require(m >= 2 && is_prime(static_cast<std::uint64_t>(m)),
            fmt::format("PG(2,m) needs a prime m, got {}", m));
    // Normalised homogeneous triples: (1,a,b), (0,1,b), (0,0,1).
    std::vector<std::array<int, 3>> elems;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            elems.push_back({1, a, b});
    for (int b = 0; b < m; ++b)
        elems.push_back({0, 1, b});
    elems.push_back({0, 0, 1});

    Arrangement a;
    a.surface = projective_plane();
    a.line_arrangement = true;
    for (std::size_t i = 0; i < elems.size(); ++i)
        a.curves.push_back(line(fmt::format("L{}", i + 1)));
    for (const auto& pt : elems) {
        PointDecl decl;
        for (std::size_t i = 0; i < elems.size(); ++i) {
            const auto& ln = elems[i];
            if ((pt[0] * ln[0] + pt[1] * ln[1] + pt[2] * ln[2]) % m == 0)
                decl.curves.push_back(a.curves[i].id);
        }
        a.points.push_back(std::move(decl));
    }
    validate(a);
    return a;
}

Arrangement gen_underline_ceva(int m)
{
    require(m >= 3, fmt::format("blown-up CEVA(m) needs m >= 3, got {}", m));
    Arrangement a;
    a.surface = plane_blown_up_thrice();
    a.blocks = 3;
    for (int pencil = 0; pencil < 3; ++pencil)
        for (int i = 0; i < m; ++i)
            a.curves.push_back({ceva_id(pencil, i), 0, 0, pencil + 1, 1});
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y)
            a.points.push_back({{ceva_id(0, x), ceva_id(1, y), ceva_id(2, (x + y) % m)}});
    validate(a);
    return a;
}

Arrangement gen_p1xp1(int d1, int d2, int d3)
{
    require(d1 >= 3 && d2 >= 3 && d3 >= 3,
            fmt::format("P1xP1 blocks need at least 3 curves each, got {}, {}, {}", d1, d2, d3));
    Arrangement a;
    a.surface = p1_x_p1();
    a.blocks = 3;
    const std::array<int, 3> sizes{d1, d2, d3};
    const std::array<std::int64_t, 3> self{0, 0, 2};
    auto id = [](int block, int i) { return fmt::format("{}{}", "FGS"[block], i + 1); };
    for (int b = 0; b < 3; ++b)
        for (int i = 0; i < sizes[b]; ++i)
            a.curves.push_back({id(b, i), 0, self[b], b + 1, 1});
    auto meet = [&](int b1, int i, int b2, int j) { a.points.push_back({{id(b1, i), id(b2, j)}}); };
    for (int i = 0; i < d1; ++i)
        for (int j = 0; j < d2; ++j)
            meet(0, i, 1, j);
    for (int k = 0; k < d3; ++k) {
        for (int i = 0; i < d1; ++i)
            meet(0, i, 2, k);
        for (int j = 0; j < d2; ++j)
            meet(1, j, 2, k);
    }
    // (1,1).(1,1) = 2.
    for (int k = 0; k < d3; ++k)
        for (int l = k + 1; l < d3; ++l) {
            meet(2, k, 2, l);
            meet(2, k, 2, l);
        }
    validate(a);
    return a;
}

std::vector<std::string> generator_names()
{
    return {"general-lines", "ceva", "dual-hesse", "pg2", "underline-ceva", "ceva-blowup", "p1xp1"};
}

Arrangement generate(const std::string& kind, const std::vector<std::int64_t>& params)
{
    auto expect = [&](std::size_t n) {
        if (params.size() != n)
            throw PreconditionError(
                fmt::format("generator '{}' takes {} parameter(s), got {}", kind, n, params.size()));
        for (std::int64_t v : params)
            if (v < 0 || v > 100000)
                throw PreconditionError(fmt::format("generator parameter {} out of range", v));
    };
    auto arg = [&](std::size_t i) { return static_cast<int>(params[i]); };
    if (kind == "general-lines") {
        expect(1);
        return gen_general_lines(arg(0));
    }
    if (kind == "ceva") {
        expect(1);
        return gen_ceva(arg(0));
    }
    if (kind == "dual-hesse") {
        expect(0);
        return gen_dual_hesse();
    }
    if (kind == "pg2") {
        expect(1);
        return gen_pg2(arg(0));
    }
    if (kind == "underline-ceva" || kind == "ceva-blowup") {
        expect(1);
        return gen_underline_ceva(arg(0));
    }
    if (kind == "p1xp1") {
        expect(3);
        return gen_p1xp1(arg(0), arg(1), arg(2));
    }
    throw PreconditionError(fmt::format("unknown generator '{}'", kind));
}

} // namespace randsurf
