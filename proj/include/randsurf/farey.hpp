#pragma once

// Farey neighbourhoods and the bad set of residues, plus the square-root
// bounds on Dedekind sums and continued-fraction lengths that hold outside it.

#include "randsurf/exact_compare.hpp"
#include "randsurf/numth.hpp"

#include <cstdint>
#include <vector>

namespace randsurf {

/// Neighbourhood scale C > 0 of the Farey points p*c/d.
struct FareyConfig {
    Rational C = 1;

    FareyConfig() = default;
    explicit FareyConfig(Rational c);
};

/// True iff |q - p c/d| <= C sqrt(p)/d^2 for some 1 <= d <= sqrt(p), 0 <= c <= d,
/// gcd(c, d) = 1. Requires 0 <= q < p.
bool is_farey_neighbour(std::int64_t q, PrimeModulus p, const FareyConfig& cfg = {});

struct EnumerationBudget {
    /// Upper limit on the modulus for which the whole set is materialised.
    std::int64_t max_modulus = 50'000'000;
};

/// All F-neighbours in [0, p), ascending. Enumerates each Farey neighbourhood
/// directly instead of testing every residue.
std::vector<std::int64_t> bad_set(PrimeModulus p, const FareyConfig& cfg = {},
                                  const EnumerationBudget& budget = {});

/// |F| <= C sqrt(p) (log p + 2 log 2), decided with a rational log enclosure.
BoundVerdict bad_set_size_bound(std::int64_t count, PrimeModulus p, const FareyConfig& cfg = {});

/// Girstmair-type bound for ordinary q: |s(q,p)| <= (2 + 1/C) sqrt(p) + 5.
bool dedekind_bound_holds(const Rational& s, PrimeModulus p, const FareyConfig& cfg = {});

/// Length bound for ordinary q: l(q,p) <= (2 + 1/C) sqrt(p) + 2.
bool length_bound_holds(std::int64_t l, PrimeModulus p, const FareyConfig& cfg = {});

} // namespace randsurf
