#pragma once

// O(p) oracles that evaluate the cover invariants from floor functions
// directly, without Dedekind sums or canonical parts.

#include "randsurf/covers.hpp"

namespace randsurf {

/// S(a, b; p) = sum_{i=1}^{p-1} [a i / p] [b i / p].
BigInt bracket_sum(std::int64_t a, std::int64_t b, PrimeModulus p);

/// sum_{i=1}^{p-1} i [a i / p].
BigInt weighted_floor_sum(std::int64_t a, PrimeModulus p);

struct FloorSumResult {
    /// chi from sum_i (L^(i))^2 and L^(i).K with L^(i) = sum_j {nu_j i / p} D_j.
    Rational chi;
    /// sum over nodes of the self-intersection of the discrepancy divisor.
    Rational discrepancy_square;
    /// c1^2 assembled from the discrepancy route.
    Rational c1_sq;
};

struct FloorSumBudget {
    std::int64_t max_modulus = 10'000;
};

/// Throws BudgetError when p exceeds the budget.
FloorSumResult floor_sum_oracle(const CoverSpec& spec, const FloorSumBudget& budget = {});

} // namespace randsurf
