#pragma once

// Built-in arrangements. Every generator returns a validated Arrangement.

#include "randsurf/arrangement.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace randsurf {

SurfaceClass projective_plane();
SurfaceClass p1_x_p1();
/// P^2 blown up at three non-collinear points.
SurfaceClass plane_blown_up_thrice();

/// d >= 3 lines with only double points. Ids L1..Ld.
Arrangement gen_general_lines(int d);

/// CEVA(m): lines A0..A(m-1), B0.., C0.. from the pencils x^m = y^m, y^m = z^m,
/// z^m = x^m. Triple points (A_a, B_b, C_(a+b mod m)), a-major, then the three
/// pencil centres. m = 1 is the triangle.
Arrangement gen_ceva(int m);

/// CEVA(3).
Arrangement gen_dual_hesse();

/// Lines of the projective plane over F_m, m prime. Throws PreconditionError otherwise.
Arrangement gen_pg2(int m);

/// Proper transforms of CEVA(m) on P^2 blown up at the three pencil centres:
/// 3m curves of genus 0 and self-intersection 0 in three blocks of m, only
/// triple points. Requires m >= 3.
Arrangement gen_underline_ceva(int m);

/// Three blocks of fibres and sections on P^1 x P^1: classes (1,0), (0,1), (1,1).
Arrangement gen_p1xp1(int d1, int d2, int d3);

/// Dispatches "general-lines D", "ceva M", "dual-hesse", "pg2 M",
/// "underline-ceva M" (alias "ceva-blowup"), "p1xp1 D1 D2 D3".
Arrangement generate(const std::string& kind, const std::vector<std::int64_t>& params);

/// Names accepted by `generate`.
std::vector<std::string> generator_names();

} // namespace randsurf
