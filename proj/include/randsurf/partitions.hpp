#pragma once

// The system S(A) of weighted partitions of p, exact counting, exactly
// uniform sampling, and the multiplicities induced on the log resolution.

#include "randsurf/arrangement.hpp"
#include "randsurf/farey.hpp"
#include "randsurf/numth.hpp"
#include "randsurf/rational.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace randsurf {

/// One equation sum_j u_j mu_j = p per block.
struct DiophSystem {
    std::int64_t p = 0;
    std::vector<std::vector<std::int64_t>> blocks;
};

/// Blocks and u-vectors of `a` in curve declaration order, target p.
DiophSystem system_for(const Arrangement& a, PrimeModulus p);

/// mu-values per block, aligned with DiophSystem::blocks.
struct PartitionSolution {
    std::vector<std::vector<std::int64_t>> blocks;

    friend bool operator==(const PartitionSolution&, const PartitionSolution&) = default;
};

/// Throws PreconditionError unless `sol` is a positive solution of `sys`.
void check_solution(const DiophSystem& sys, const PartitionSolution& sol);

/// mu indexed by curve, for a solution of system_for(a, p).
std::vector<std::int64_t> mu_by_curve(const Arrangement& a, const PartitionSolution& sol);

struct CountBudget {
    /// Upper limit on p * (number of curves in a block).
    std::int64_t max_cells = 200'000'000;
};

/// Number of positive solutions; product over blocks.
BigInt count_solutions(const DiophSystem& sys, const CountBudget& budget = {});

struct SamplerBudget {
    /// Upper limit on stored suffix-count entries for blocks with general u.
    std::int64_t max_table_entries = 20'000'000;
};

using Rng = std::mt19937_64;

/// Uniform integer in [0, n), n > 0.
BigInt uniform_below(const BigInt& n, Rng& rng);

/// Exactly uniform sampler over the positive solutions of a system. Suffix
/// counts are built once; `draw` is const and may be shared across threads.
/// All-ones blocks use binomial counts instead of a table.
class SolutionSampler {
public:
    explicit SolutionSampler(DiophSystem sys, const SamplerBudget& budget = {});

    const DiophSystem& system() const noexcept { return sys_; }
    /// Throws EmptySolutionSet when zero.
    const BigInt& count() const noexcept { return count_; }
    PartitionSolution draw(Rng& rng) const;

private:
    struct Block {
        std::vector<std::int64_t> u;
        std::int64_t slack = -1;  // p - sum u; negative means no solution
        bool all_ones = false;
        // rows[k][t] = #{x_(k+1).. >= 0 : sum_(j>k) u_j x_j = t}, k = 0..d-3.
        std::vector<std::vector<BigInt>> rows;
        BigInt count;
    };

    static Block build(const std::vector<std::int64_t>& u, std::int64_t p, const SamplerBudget& budget);
    std::vector<std::int64_t> draw_block(const Block& b, Rng& rng) const;
    BigInt suffix_count(const Block& b, std::size_t k, std::int64_t t) const;

    DiophSystem sys_;
    std::vector<Block> blocks_;
    BigInt count_;
};

/// One draw from a freshly built sampler seeded with `seed`.
PartitionSolution sample_uniform(const DiophSystem& sys, std::uint64_t seed);

/// nu per resolved divisor, in ResolvedArrangement::divisors order, all in (0, p).
struct MultiplicityAssignment {
    std::int64_t p = 0;
    std::vector<std::int64_t> nu;

    friend bool operator==(const MultiplicityAssignment&, const MultiplicityAssignment&) = default;
};

/// Proper transforms get mu, exceptional divisors the sum of mu over their
/// point mod p. Throws ExceptionalVanishes when such a sum is 0 mod p.
MultiplicityAssignment assign(const Arrangement& a, const ResolvedArrangement& ra,
                              const PartitionSolution& sol, PrimeModulus p);

/// Assignment from explicit nu values; each must lie in (0, p).
MultiplicityAssignment assignment_from_nu(const ResolvedArrangement& ra, std::vector<std::int64_t> nu,
                                          PrimeModulus p);

enum class Orientation {
    LowerFirst,  ///< q = p - (nu_i' nu_j mod p) with i < j
    UpperFirst,  ///< q = p - (nu_j' nu_i mod p)
};

struct NodeResidue {
    std::size_t i = 0;
    std::size_t j = 0;
    std::int64_t q = 0;
    std::int64_t count = 0;
};

/// One entry per intersecting pair, in lexicographic (i, j) order.
std::vector<NodeResidue> node_residues(const MultiplicityAssignment& ma, const ResolvedArrangement& ra,
                                       Orientation orientation = Orientation::LowerFirst);

/// q = p - (nu_i' nu_j mod p); 0 < q < p for 0 < nu_i, nu_j < p.
std::int64_t node_residue(std::int64_t nu_i, std::int64_t nu_j, PrimeModulus p);

struct GoodnessReport {
    bool good = true;
    std::vector<NodeResidue> offending;
};

/// Good iff no node residue is a Farey neighbour.
GoodnessReport is_good(const MultiplicityAssignment& ma, const ResolvedArrangement& ra,
                       const FareyConfig& cfg = {});

struct GoodSample {
    PartitionSolution solution;
    MultiplicityAssignment assignment;
    std::int64_t tries = 0;
};

/// Draws until a good solution appears. Vanishing exceptional sums count as
/// bad tries. Throws ExhaustedTries after `max_tries` rejections.
GoodSample sample_good(const SolutionSampler& sampler, const Arrangement& a,
                       const ResolvedArrangement& ra, Rng& rng, std::int64_t max_tries,
                       const FareyConfig& cfg = {});

GoodSample sample_good(const DiophSystem& sys, const Arrangement& a, const ResolvedArrangement& ra,
                       std::uint64_t seed, std::int64_t max_tries, const FareyConfig& cfg = {});

} // namespace randsurf
