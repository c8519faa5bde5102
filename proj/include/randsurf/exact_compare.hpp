#pragma once

// Decisions about irrational thresholds (square roots, logarithms) made
// without floating point.

#include "randsurf/rational.hpp"

namespace randsurf {

/// x <= a*sqrt(n) + b, for a >= 0 and n >= 0. Decided by squaring.
bool le_affine_sqrt(const Rational& x, const Rational& a, const Rational& b, const BigInt& n);

/// x < a*sqrt(n) + b, for a >= 0 and n >= 0.
bool lt_affine_sqrt(const Rational& x, const Rational& a, const Rational& b, const BigInt& n);

struct Interval {
    Rational lo;
    Rational hi;
};

/// Rational enclosure lo <= ln(x) <= hi for x > 0. Width shrinks like 9^-terms.
Interval log_enclosure(const Rational& x, int terms = 32);

enum class BoundVerdict { Holds, Violated, Undecided };

/// Decides count <= c * sqrt(n) * ln(m) with a rational log enclosure of m.
BoundVerdict check_sqrt_log_bound(const BigInt& count, const Rational& c, const BigInt& n,
                                  const BigInt& m);

} // namespace randsurf
