#pragma once

// Exact kernels over a prime modulus: modular inverses, negative-regular
// (Hirzebruch-Jung) continued fractions, Dedekind sums and canonical parts.
//
// Moduli are held in 64-bit integers and bounded by kMaxModulus so that every
// product of two residues fits without overflow. Rational results are exact.

#include "randsurf/rational.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace randsurf {

inline constexpr std::int64_t kMaxModulus = (std::int64_t{1} << 31) - 1;

/// Deterministic for every 64-bit input.
bool is_prime(std::uint64_t n);

/// A prime p with 3 <= p <= kMaxModulus.
class PrimeModulus {
public:
    explicit PrimeModulus(std::int64_t p);

    std::int64_t value() const noexcept { return p_; }
    operator std::int64_t() const noexcept { return p_; }

    friend bool operator==(const PrimeModulus&, const PrimeModulus&) = default;

private:
    std::int64_t p_;
};

/// An integer 0 < q < p.
class Residue {
public:
    Residue(std::int64_t q, PrimeModulus p);

    std::int64_t q() const noexcept { return q_; }
    PrimeModulus modulus() const noexcept { return p_; }
    std::int64_t p() const noexcept { return p_.value(); }

private:
    std::int64_t q_;
    PrimeModulus p_;
};

/// q' with q q' = 1 (mod p).
Residue mod_inverse(const Residue& q);

/// p/q = e_1 - 1/(e_2 - 1/(... - 1/e_s)), all e_i >= 2.
struct NcfExpansion {
    std::vector<std::int64_t> e;
    /// Remainders b_{-1} = p, b_0 = q, ..., b_{s-1} = 1, b_s = 0, stored with offset one.
    std::vector<std::int64_t> b;

    std::size_t length() const noexcept { return e.size(); }
    /// b_i for -1 <= i <= s.
    std::int64_t remainder(std::ptrdiff_t i) const { return b.at(static_cast<std::size_t>(i + 1)); }
};

NcfExpansion ncf_expand(const Residue& q);

/// Evaluates [e_1, ..., e_s]; throws PreconditionError on an empty sequence or any e_i < 2.
Rational ncf_eval(std::span<const std::int64_t> e);

/// l(q, p): number of partial quotients of p/q.
std::int64_t length(const Residue& q);

/// c(q, p) = (q + q')/p + sum (e_i - 2).
Rational canonical_part(const Residue& q);

/// s(q, p) straight from the sawtooth definition. O(p).
Rational dedekind_brute(const Residue& q);

/// s(q, p) by the reciprocity recursion. O(log p).
Rational dedekind_fast(const Residue& q);

/// s(q, p) = ((q + q')/p + sum (e_i - 3)) / 12.
Rational dedekind_from_ncf(const Residue& q);

/// Sum of the partial quotients f_1..f_r of n/m = [0; f_1, ..., f_r] with f_r >= 2.
/// Requires 0 < n < m and gcd(n, m) = 1.
std::int64_t rcf_total(std::int64_t n, std::int64_t m);

/// Discrepancies alpha_i = -1 + b_{i-1}/p + b'_{s-i}/p of the resolution chain of
/// p/q, where b' are the remainders of the expansion of q'.
std::vector<Rational> chain_discrepancies(const Residue& q);

/// sum alpha_i (e_i - 2): self-intersection of the discrepancy divisor over one node.
Rational chain_discrepancy_square(const Residue& q);

std::int64_t gcd(std::int64_t a, std::int64_t b) noexcept;
std::int64_t isqrt(std::int64_t n) noexcept;

} // namespace randsurf
