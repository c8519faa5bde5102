#pragma once

// Abstract incidence model of a simple crossing divisible arrangement of
// curves on a surface, its log resolution, and log Chern numbers.
//
// There are no coordinates: intersection numbers between distinct curves are
// the number of declared points they share, self-intersections are trusted as
// declared.

#include "randsurf/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace randsurf {

/// Chern numbers of the ambient surface.
struct SurfaceClass {
    std::string name;
    std::int64_t c1_sq = 0;
    std::int64_t c2 = 0;

    friend bool operator==(const SurfaceClass&, const SurfaceClass&) = default;
};

struct CurveDecl {
    std::string id;
    std::int64_t genus = 0;
    std::int64_t self_int = 0;
    int block = 1;       ///< 1-based divisibility block
    std::int64_t u = 1;  ///< O(C) = L_block^u

    friend bool operator==(const CurveDecl&, const CurveDecl&) = default;
};

/// An n-point: the ids of the n >= 2 curves through it.
struct PointDecl {
    std::vector<std::string> curves;

    friend bool operator==(const PointDecl&, const PointDecl&) = default;
};

struct Arrangement {
    SurfaceClass surface;
    int blocks = 1;
    std::vector<CurveDecl> curves;
    std::vector<PointDecl> points;
    bool line_arrangement = false;

    /// Throws ValidationError(UnknownCurve) for an undeclared id.
    std::size_t index_of(std::string_view id) const;
    /// Curve indices of each block, in declaration order.
    std::vector<std::vector<std::size_t>> block_members() const;

    friend bool operator==(const Arrangement&, const Arrangement&) = default;
};

/// d and the counts t_n of n-points.
struct CombinatorialData {
    std::int64_t d = 0;
    std::map<std::int64_t, std::int64_t> t;

    std::int64_t t_n(std::int64_t n) const;
};

/// Runs every structural check and returns the point counts. Throws ValidationError.
CombinatorialData validate(const Arrangement& a);

struct LogChernNumbers {
    std::int64_t c1bar_sq = 0;
    std::int64_t c2bar = 0;

    /// c1bar^2 / c2bar, empty when c2bar = 0.
    std::optional<Rational> ratio() const;

    friend bool operator==(const LogChernNumbers&, const LogChernNumbers&) = default;
};

/// Log Chern numbers from d, t_n, genera and self-intersections.
LogChernNumbers log_chern_direct(const Arrangement& a);

enum class DivisorKind { ProperTransform, Exceptional };

struct ResolvedCurve {
    std::string id;
    DivisorKind kind = DivisorKind::ProperTransform;
    std::int64_t genus = 0;
    std::int64_t self_int = 0;
    /// Curve index for proper transforms, point index for exceptional divisors.
    std::size_t source = 0;
    /// Curves through the blown-up point (exceptional divisors only).
    std::vector<std::size_t> over;
};

/// (Y, A-bar): proper transforms first (in curve order), then one exceptional
/// divisor per n-point with n >= 3 (in point order).
struct ResolvedArrangement {
    SurfaceClass surface_Y;
    std::vector<ResolvedCurve> divisors;
    /// (i, j) with i < j -> number of nodes shared by D_i and D_j.
    std::map<std::pair<std::size_t, std::size_t>, std::int64_t> nodes;
    std::int64_t t2_total = 0;
    std::size_t curve_count = 0;

    std::size_t exceptional_count() const { return divisors.size() - curve_count; }
    std::int64_t self_int_total() const;
    /// sum (g(D_i) - 1).
    std::int64_t genus_defect() const;
};

/// Blows up every n-point with n >= 3.
ResolvedArrangement resolve(const Arrangement& a);

/// Log Chern numbers from the nodes, genera and self-intersections of the resolution.
LogChernNumbers log_chern_resolved(const ResolvedArrangement& ra);

struct DiagnosticCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct DiagnosticsReport {
    std::vector<DiagnosticCheck> checks;
    bool all_pass() const;
};

/// Realisability heuristics for plane line arrangements over C: Hirzebruch's
/// inequality, t_2 + t_3/4 >= 3, c1bar^2 <= (8/3) c2bar and sum t_n >= d.
/// Advisory only; requires `line_arrangement`.
DiagnosticsReport diagnostics(const Arrangement& a);

} // namespace randsurf
