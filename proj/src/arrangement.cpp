#include "randsurf/arrangement.hpp"

#include "randsurf/errors.hpp"
#include "randsurf/numth.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <set>

namespace randsurf {

const char* to_string(ValidationCode code) noexcept
{
    switch (code) {
    case ValidationCode::TooFewCurves: return "too-few-curves";
    case ValidationCode::UnknownCurve: return "unknown-curve";
    case ValidationCode::DuplicateCurve: return "duplicate-curve";
    case ValidationCode::BadCurveData: return "bad-curve-data";
    case ValidationCode::BadPoint: return "bad-point";
    case ValidationCode::DPoint: return "d-point";
    case ValidationCode::BlockGcd: return "block-gcd";
    case ValidationCode::BlockTooSmall: return "block-too-small";
    case ValidationCode::BlockIndex: return "block-index";
    case ValidationCode::LinePairCoverage: return "line-pair-coverage";
    case ValidationCode::SurfaceNoether: return "surface-noether";
    }
    return "unknown";
}

std::size_t Arrangement::index_of(std::string_view id) const
{
    for (std::size_t i = 0; i < curves.size(); ++i)
        if (curves[i].id == id)
            return i;
    throw ValidationError(ValidationCode::UnknownCurve, fmt::format("no curve named '{}'", id));
}

std::vector<std::vector<std::size_t>> Arrangement::block_members() const
{
    std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(std::max(blocks, 0)));
    for (std::size_t i = 0; i < curves.size(); ++i) {
        int b = curves[i].block;
        if (b >= 1 && b <= blocks)
            out[static_cast<std::size_t>(b - 1)].push_back(i);
    }
    return out;
}

std::int64_t CombinatorialData::t_n(std::int64_t n) const
{
    auto it = t.find(n);
    return it == t.end() ? 0 : it->second;
}

namespace {

bool valid_id(const std::string& id)
{
    if (id.empty())
        return false;
    return std::all_of(id.begin(), id.end(), [](unsigned char ch) {
        return std::isalnum(ch) || ch == '_' || ch == '-' || ch == '.';
    });
}

std::vector<std::vector<std::size_t>> point_indices(const Arrangement& a)
{
    std::vector<std::vector<std::size_t>> out;
    out.reserve(a.points.size());
    for (const PointDecl& pt : a.points) {
        std::vector<std::size_t> idx;
        idx.reserve(pt.curves.size());
        for (const std::string& id : pt.curves)
            idx.push_back(a.index_of(id));
        out.push_back(std::move(idx));
    }
    return out;
}

} // namespace

CombinatorialData validate(const Arrangement& a)
{
    using VC = ValidationCode;
    const auto d = static_cast<std::int64_t>(a.curves.size());
    if (d < 3)
        throw ValidationError(VC::TooFewCurves, fmt::format("need d >= 3 curves, got {}", d));
    if ((a.surface.c1_sq + a.surface.c2) % 12 != 0)
        throw ValidationError(VC::SurfaceNoether,
                              fmt::format("c1^2 + c2 = {} is not divisible by 12",
                                          a.surface.c1_sq + a.surface.c2));
    if (a.blocks < 1)
        throw ValidationError(VC::BlockIndex, fmt::format("block count {} < 1", a.blocks));

    std::set<std::string> seen;
    for (const CurveDecl& c : a.curves) {
        if (!valid_id(c.id))
            throw ValidationError(VC::BadCurveData, fmt::format("invalid curve id '{}'", c.id));
        if (!seen.insert(c.id).second)
            throw ValidationError(VC::DuplicateCurve, fmt::format("curve '{}' declared twice", c.id));
        if (c.genus < 0)
            throw ValidationError(VC::BadCurveData, fmt::format("curve '{}' has negative genus", c.id));
        if (c.u < 1)
            throw ValidationError(VC::BadCurveData, fmt::format("curve '{}' has u = {} < 1", c.id, c.u));
        if (c.block < 1 || c.block > a.blocks)
            throw ValidationError(VC::BlockIndex,
                                  fmt::format("curve '{}' is in block {} outside 1..{}", c.id,
                                              c.block, a.blocks));
    }

    CombinatorialData data;
    data.d = d;
    std::vector<std::vector<std::size_t>> pts = point_indices(a);
    for (std::size_t k = 0; k < pts.size(); ++k) {
        std::vector<std::size_t> idx = pts[k];
        std::sort(idx.begin(), idx.end());
        if (idx.size() < 2)
            throw ValidationError(VC::BadPoint, fmt::format("point {} lies on fewer than 2 curves", k + 1));
        if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
            throw ValidationError(VC::BadPoint, fmt::format("point {} repeats a curve", k + 1));
        auto n = static_cast<std::int64_t>(idx.size());
        if (n == d)
            throw ValidationError(VC::DPoint,
                                  fmt::format("point {} lies on all {} curves", k + 1, d));
        ++data.t[n];
    }

    std::vector<std::vector<std::size_t>> members = a.block_members();
    for (std::size_t b = 0; b < members.size(); ++b) {
        if (members[b].size() < 3)
            throw ValidationError(VC::BlockTooSmall,
                                  fmt::format("block {} has {} curves, need at least 3", b + 1,
                                              members[b].size()));
        std::int64_t g = 0;
        for (std::size_t i : members[b])
            g = gcd(g, a.curves[i].u);
        if (g != 1)
            throw ValidationError(VC::BlockGcd,
                                  fmt::format("u-values of block {} have gcd {}", b + 1, g));
    }

    if (a.line_arrangement) {
        std::map<std::pair<std::size_t, std::size_t>, int> shared;
        for (const auto& idx : pts)
            for (std::size_t x = 0; x < idx.size(); ++x)
                for (std::size_t y = x + 1; y < idx.size(); ++y)
                    ++shared[std::minmax(idx[x], idx[y])];
        for (std::size_t i = 0; i < a.curves.size(); ++i)
            for (std::size_t j = i + 1; j < a.curves.size(); ++j) {
                auto it = shared.find({i, j});
                int count = it == shared.end() ? 0 : it->second;
                if (count != 1)
                    throw ValidationError(VC::LinePairCoverage,
                                          fmt::format("lines '{}' and '{}' share {} points, expected 1",
                                                      a.curves[i].id, a.curves[j].id, count));
            }
        std::int64_t pairs = 0;
        for (const auto& [n, t] : data.t)
            pairs += n * (n - 1) / 2 * t;
        if (pairs != d * (d - 1) / 2)
            throw ValidationError(VC::LinePairCoverage,
                                  fmt::format("sum C(n,2) t_n = {} differs from C(d,2) = {}", pairs,
                                              d * (d - 1) / 2));
    }
    return data;
}

std::optional<Rational> LogChernNumbers::ratio() const
{
    if (c2bar == 0)
        return std::nullopt;
    return make_rational(c1bar_sq, c2bar);
}

LogChernNumbers log_chern_direct(const Arrangement& a)
{
    CombinatorialData data = validate(a);
    std::int64_t self = 0, defect = 0;
    for (const CurveDecl& c : a.curves) {
        self += c.self_int;
        defect += c.genus - 1;
    }
    std::int64_t pts1 = 0, pts2 = 0;
    for (const auto& [n, t] : data.t) {
        pts1 += (3 * n - 4) * t;
        pts2 += (n - 1) * t;
    }
    return {a.surface.c1_sq - self + pts1 + 4 * defect, a.surface.c2 + pts2 + 2 * defect};
}

std::int64_t ResolvedArrangement::self_int_total() const
{
    std::int64_t total = 0;
    for (const ResolvedCurve& c : divisors)
        total += c.self_int;
    return total;
}

std::int64_t ResolvedArrangement::genus_defect() const
{
    std::int64_t total = 0;
    for (const ResolvedCurve& c : divisors)
        total += c.genus - 1;
    return total;
}

ResolvedArrangement resolve(const Arrangement& a)
{
    validate(a);
    ResolvedArrangement ra;
    ra.curve_count = a.curves.size();
    for (std::size_t i = 0; i < a.curves.size(); ++i) {
        const CurveDecl& c = a.curves[i];
        ra.divisors.push_back({c.id, DivisorKind::ProperTransform, c.genus, c.self_int, i, {}});
    }
    std::vector<std::vector<std::size_t>> pts = point_indices(a);
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const auto& idx = pts[k];
        if (idx.size() == 2) {
            ++ra.nodes[std::minmax(idx[0], idx[1])];
            continue;
        }
        std::size_t e = ra.divisors.size();
        ResolvedCurve ex{fmt::format("E#{}", k + 1), DivisorKind::Exceptional, 0, -1, k, idx};
        ra.divisors.push_back(std::move(ex));
        for (std::size_t c : idx) {
            --ra.divisors[c].self_int;
            ++ra.nodes[{c, e}];
        }
    }
    for (const auto& [pair, n] : ra.nodes)
        ra.t2_total += n;
    auto k = static_cast<std::int64_t>(ra.exceptional_count());
    ra.surface_Y = {fmt::format("{} blown up at {} points", a.surface.name, k), a.surface.c1_sq - k,
                    a.surface.c2 + k};
    return ra;
}

LogChernNumbers log_chern_resolved(const ResolvedArrangement& ra)
{
    const std::int64_t self = ra.self_int_total();
    const std::int64_t defect = ra.genus_defect();
    return {ra.surface_Y.c1_sq - self + 2 * ra.t2_total + 4 * defect,
            ra.surface_Y.c2 + ra.t2_total + 2 * defect};
}

bool DiagnosticsReport::all_pass() const
{
    return std::all_of(checks.begin(), checks.end(), [](const DiagnosticCheck& c) { return c.pass; });
}

DiagnosticsReport diagnostics(const Arrangement& a)
{
    if (!a.line_arrangement)
        throw PreconditionError("diagnostics apply to plane line arrangements only");
    CombinatorialData data = validate(a);
    LogChernNumbers log = log_chern_direct(a);
    const std::int64_t t2 = data.t_n(2), t3 = data.t_n(3);
    std::int64_t high = 0, total = 0;
    for (const auto& [n, t] : data.t) {
        total += t;
        if (n > 4)
            high += (n - 4) * t;
    }
    DiagnosticsReport rep;
    // Scaled by 4 to stay in integers.
    rep.checks.push_back({"hirzebruch", 4 * t2 + 3 * t3 >= 4 * (data.d + high),
                          fmt::format("t2 + 3/4 t3 = {}/4, d + sum_(n>4) (n-4) t_n = {}",
                                      4 * t2 + 3 * t3, data.d + high)});
    rep.checks.push_back({"t2-plus-quarter-t3", 4 * t2 + t3 >= 12,
                          fmt::format("t2 + 1/4 t3 = {}/4, need >= 3", 4 * t2 + t3)});
    rep.checks.push_back({"log-ratio-8/3", 3 * log.c1bar_sq <= 8 * log.c2bar,
                          fmt::format("c1bar^2 = {}, (8/3) c2bar = {}/3", log.c1bar_sq, 8 * log.c2bar)});
    rep.checks.push_back({"log-ratio-3", total >= data.d,
                          fmt::format("sum t_n = {}, d = {}", total, data.d)});
    return rep;
}

} // namespace randsurf
