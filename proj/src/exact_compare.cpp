#include "randsurf/exact_compare.hpp"

#include "randsurf/errors.hpp"

namespace randsurf {

bool le_affine_sqrt(const Rational& x, const Rational& a, const Rational& b, const BigInt& n)
{
    if (sgn(a) < 0 || sgn(n) < 0)
        throw PreconditionError("le_affine_sqrt: a and n must be non-negative");
    Rational y = x - b;
    if (sgn(y) <= 0)
        return true;
    return y * y <= a * a * Rational(n);
}

bool lt_affine_sqrt(const Rational& x, const Rational& a, const Rational& b, const BigInt& n)
{
    if (sgn(a) < 0 || sgn(n) < 0)
        throw PreconditionError("lt_affine_sqrt: a and n must be non-negative");
    Rational y = x - b;
    if (sgn(y) < 0)
        return true;
    if (sgn(y) == 0)
        return sgn(a) > 0 && sgn(n) > 0;
    return y * y < a * a * Rational(n);
}

namespace {

// ln(y) = 2 * sum z^(2k+1)/(2k+1), z = (y-1)/(y+1), for y >= 1. All terms are
// non-negative, so the partial sum is a lower bound and the geometric tail
// 2 z^(2N+1) / ((2N+1)(1-z^2)) closes the interval from above.
Interval log_series(const Rational& y, int terms)
{
    Rational z = (y - 1) / (y + 1);
    Rational z2 = z * z;
    Rational power = z;
    Rational sum = 0;
    for (int k = 0; k < terms; ++k) {
        sum += power / (2 * k + 1);
        power *= z2;
    }
    Rational tail = power / ((2 * terms + 1) * (1 - z2));
    return {2 * sum, 2 * (sum + tail)};
}

} // namespace

Interval log_enclosure(const Rational& x, int terms)
{
    if (sgn(x) <= 0)
        throw PreconditionError("log_enclosure: argument must be positive");
    // x = 2^k * y with 1 <= y < 2.
    long k = static_cast<long>(mpz_sizeinbase(x.get_num().get_mpz_t(), 2)) -
             static_cast<long>(mpz_sizeinbase(x.get_den().get_mpz_t(), 2));
    Rational y = x;
    auto scale = [](Rational v, long e) {
        if (e > 0)
            mpq_mul_2exp(v.get_mpq_t(), v.get_mpq_t(), static_cast<unsigned long>(e));
        else if (e < 0)
            mpq_div_2exp(v.get_mpq_t(), v.get_mpq_t(), static_cast<unsigned long>(-e));
        return v;
    };
    y = scale(x, -k);
    while (y >= 2) {
        y = scale(y, -1);
        ++k;
    }
    while (y < 1) {
        y = scale(y, 1);
        --k;
    }
    Interval ln2 = log_series(Rational(2), terms);
    Interval lny = log_series(y, terms);
    Interval out;
    if (k >= 0) {
        out.lo = k * ln2.lo + lny.lo;
        out.hi = k * ln2.hi + lny.hi;
    } else {
        out.lo = k * ln2.hi + lny.lo;
        out.hi = k * ln2.lo + lny.hi;
    }
    return out;
}

BoundVerdict check_sqrt_log_bound(const BigInt& count, const Rational& c, const BigInt& n,
                                  const BigInt& m)
{
    if (sgn(c) <= 0 || sgn(n) < 0 || sgn(m) <= 0)
        throw PreconditionError("check_sqrt_log_bound: invalid arguments");
    Interval ln = log_enclosure(Rational(m));
    Rational lhs = Rational(count) * Rational(count);
    Rational base = c * c * Rational(n);
    // count >= 0; the right-hand side is only meaningful where ln(m) > 0.
    if (sgn(ln.lo) > 0 && lhs <= base * ln.lo * ln.lo)
        return BoundVerdict::Holds;
    if (sgn(ln.hi) <= 0)
        return sgn(count) == 0 ? BoundVerdict::Holds : BoundVerdict::Violated;
    if (lhs > base * ln.hi * ln.hi)
        return BoundVerdict::Violated;
    return BoundVerdict::Undecided;
}

} // namespace randsurf
