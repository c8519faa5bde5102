#include "randsurf/floor_sum.hpp"

#include "randsurf/errors.hpp"

#include <fmt/format.h>

namespace randsurf {

BigInt bracket_sum(std::int64_t a, std::int64_t b, PrimeModulus p)
{
    const std::int64_t pv = p.value();
    BigInt total = 0;
    for (std::int64_t i = 1; i < pv; ++i)
        total += BigInt(to_bigint((a * i) / pv) * to_bigint((b * i) / pv));
    return total;
}

BigInt weighted_floor_sum(std::int64_t a, PrimeModulus p)
{
    const std::int64_t pv = p.value();
    BigInt total = 0;
    for (std::int64_t i = 1; i < pv; ++i)
        total += BigInt(to_bigint(i) * to_bigint((a * i) / pv));
    return total;
}

FloorSumResult floor_sum_oracle(const CoverSpec& spec, const FloorSumBudget& budget)
{
    check_cover_spec(spec);
    const std::int64_t p = spec.p.value();
    if (p > budget.max_modulus)
        throw BudgetError(fmt::format("floor-sum oracle is O(p); p = {} exceeds {}", p, budget.max_modulus));
    const ResolvedArrangement& ra = spec.resolved;
    const std::size_t r = ra.divisors.size();

    // With f_j = (nu_j i mod p)/p:
    // chi = p chi(Y) + 1/2 sum_i [ (L^(i))^2 - L^(i).(D + K) restricted to each D_j ]
    //     = p chi(Y) + 1/2 sum_i [ sum_j f_j^2 D_j^2 + 2 sum_{j<k} f_j f_k D_j.D_k
    //                              + sum_j f_j (2 g_j - 2 - D_j^2) ].
    // Accumulated over the common denominator p^2.
    BigInt acc = 0;
    std::vector<std::int64_t> rem(r);
    for (std::int64_t i = 1; i < p; ++i) {
        __int128 row = 0;
        for (std::size_t j = 0; j < r; ++j) {
            rem[j] = (spec.nu.nu[j] * i) % p;
            const ResolvedCurve& c = ra.divisors[j];
            row += static_cast<__int128>(rem[j]) * rem[j] * c.self_int;
            row += static_cast<__int128>(rem[j]) * p * (2 * c.genus - 2 - c.self_int);
        }
        for (const auto& [pair, count] : ra.nodes)
            row += static_cast<__int128>(2) * rem[pair.first] * rem[pair.second] * count;
        // |row| < p^2 (r^2 + 2r) max|D^2|; fits in 64 bits for p <= 10^4 and sane r.
        acc += BigInt(to_bigint(static_cast<std::int64_t>(row)));
    }
    const SurfaceClass& y = ra.surface_Y;
    FloorSumResult out;
    out.chi = make_rational(y.c1_sq + y.c2, 12) * p + Rational(acc, BigInt(2 * to_bigint(p) * p));
    out.chi.canonicalize();

    Rational disc = 0;
    for (const NodeResidue& n : node_residues(spec.nu, ra))
        disc += chain_discrepancy_square(Residue(n.q, spec.p)) * to_bigint(n.count);
    out.discrepancy_square = disc;

    // K_X^2 = p (K_Y + (1 - 1/p) D)^2 + sum Delta^2, with D = sum D_i reduced.
    const Rational P(to_bigint(p));
    const Rational self(to_bigint(ra.self_int_total()));
    const Rational defect(to_bigint(ra.genus_defect()));
    const Rational t2(to_bigint(ra.t2_total));
    out.c1_sq = P * to_bigint(y.c1_sq) - (P * P - 1) / P * self + 4 * (P - 1) * defect +
                2 * (P - 1) * (P - 1) / P * t2 + disc;
    return out;
}

} // namespace randsurf
