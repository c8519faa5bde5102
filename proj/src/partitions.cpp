#include "randsurf/partitions.hpp"

#include "randsurf/errors.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace randsurf {

DiophSystem system_for(const Arrangement& a, PrimeModulus p)
{
    validate(a);
    DiophSystem sys;
    sys.p = p.value();
    for (const auto& members : a.block_members()) {
        std::vector<std::int64_t> u;
        for (std::size_t i : members)
            u.push_back(a.curves[i].u);
        sys.blocks.push_back(std::move(u));
    }
    return sys;
}

void check_solution(const DiophSystem& sys, const PartitionSolution& sol)
{
    if (sol.blocks.size() != sys.blocks.size())
        throw PreconditionError(fmt::format("partition has {} blocks, system has {}", sol.blocks.size(),
                                            sys.blocks.size()));
    for (std::size_t b = 0; b < sys.blocks.size(); ++b) {
        const auto& u = sys.blocks[b];
        const auto& mu = sol.blocks[b];
        if (mu.size() != u.size())
            throw PreconditionError(fmt::format("block {} has {} weights, expected {}", b + 1, mu.size(),
                                                u.size()));
        __int128 sum = 0;
        for (std::size_t j = 0; j < u.size(); ++j) {
            if (mu[j] <= 0 || mu[j] >= sys.p)
                throw PreconditionError(
                    fmt::format("block {} weight {} outside (0, {})", b + 1, mu[j], sys.p));
            sum += static_cast<__int128>(u[j]) * mu[j];
        }
        if (sum != sys.p)
            throw PreconditionError(fmt::format("block {} weights do not sum to p = {}", b + 1, sys.p));
    }
}

std::vector<std::int64_t> mu_by_curve(const Arrangement& a, const PartitionSolution& sol)
{
    std::vector<std::int64_t> mu(a.curves.size(), 0);
    auto members = a.block_members();
    if (members.size() != sol.blocks.size())
        throw PreconditionError("partition block count does not match the arrangement");
    for (std::size_t b = 0; b < members.size(); ++b) {
        if (members[b].size() != sol.blocks[b].size())
            throw PreconditionError(fmt::format("block {} size mismatch", b + 1));
        for (std::size_t k = 0; k < members[b].size(); ++k)
            mu[members[b][k]] = sol.blocks[b][k];
    }
    return mu;
}

namespace {

std::int64_t slack_of(const std::vector<std::int64_t>& u, std::int64_t p)
{
    std::int64_t s = p;
    for (std::int64_t x : u)
        s -= x;
    return s;
}

// Number of non-negative x with sum u_j x_j = t, one rolling row.
BigInt count_block(const std::vector<std::int64_t>& u, std::int64_t t)
{
    std::vector<BigInt> row(static_cast<std::size_t>(t + 1), 0);
    const std::int64_t last = u.back();
    for (std::int64_t s = 0; s <= t; s += last)
        row[static_cast<std::size_t>(s)] = 1;
    for (std::size_t k = u.size() - 1; k-- > 0;) {
        const std::int64_t w = u[k];
        for (std::int64_t s = w; s <= t; ++s)
            row[static_cast<std::size_t>(s)] += row[static_cast<std::size_t>(s - w)];
    }
    return row[static_cast<std::size_t>(t)];
}

BigInt binomial(std::int64_t n, std::int64_t k)
{
    BigInt out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

} // namespace

BigInt count_solutions(const DiophSystem& sys, const CountBudget& budget)
{
    BigInt total = 1;
    for (const auto& u : sys.blocks) {
        if (u.empty())
            throw PreconditionError("empty block");
        const std::int64_t slack = slack_of(u, sys.p);
        if (slack < 0)
            return 0;
        const auto d = static_cast<std::int64_t>(u.size());
        if (std::all_of(u.begin(), u.end(), [](std::int64_t x) { return x == 1; })) {
            total *= binomial(sys.p - 1, d - 1);
            continue;
        }
        if (sys.p > budget.max_cells / d)
            throw BudgetError(fmt::format("counting needs p*d = {}*{} cells, budget {}", sys.p, d,
                                          budget.max_cells));
        total *= count_block(u, slack);
    }
    return total;
}

BigInt uniform_below(const BigInt& n, Rng& rng)
{
    if (n <= 0)
        throw PreconditionError("uniform_below: bound must be positive");
    const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    const std::size_t words = (bits + 63) / 64;
    const std::size_t top_bits = bits - 64 * (words - 1);
    const std::uint64_t top_mask = top_bits == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << top_bits) - 1);
    std::vector<std::uint64_t> limbs(words);
    BigInt x;
    // Rejection on the smallest power of two >= n: expected < 2 rounds.
    do {
        for (std::size_t i = 0; i < words; ++i)
            limbs[i] = rng();
        limbs[words - 1] &= top_mask;
        mpz_import(x.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, limbs.data());
    } while (x >= n);
    return x;
}

SolutionSampler::Block SolutionSampler::build(const std::vector<std::int64_t>& u, std::int64_t p,
                                              const SamplerBudget& budget)
{
    Block b;
    b.u = u;
    b.slack = slack_of(u, p);
    b.all_ones = std::all_of(u.begin(), u.end(), [](std::int64_t x) { return x == 1; });
    if (b.slack < 0) {
        b.count = 0;
        return b;
    }
    const auto d = u.size();
    if (b.all_ones) {
        b.count = binomial(b.slack + static_cast<std::int64_t>(d) - 1, static_cast<std::int64_t>(d) - 1);
        return b;
    }
    if (d < 2) {
        b.count = b.slack % u[0] == 0 ? 1 : 0;
        return b;
    }
    const std::int64_t T = b.slack;
    const auto stored = static_cast<std::int64_t>(d - 2) * (T + 1);
    if (stored > budget.max_table_entries)
        throw BudgetError(fmt::format("sampler table needs {} entries, budget {}", stored,
                                      budget.max_table_entries));
    // Row for suffix starting at k+1 is needed when drawing x_k, k = 0..d-2.
    // The last suffix (one variable) is closed form; rows stores suffixes 1..d-2.
    std::vector<BigInt> row(static_cast<std::size_t>(T + 1), 0);
    for (std::int64_t s = 0; s <= T; s += u[d - 1])
        row[static_cast<std::size_t>(s)] = 1;
    b.rows.assign(d - 2, {});
    for (std::size_t k = d - 1; k-- > 0;) {
        const std::int64_t w = u[k];
        for (std::int64_t s = w; s <= T; ++s)
            row[static_cast<std::size_t>(s)] += row[static_cast<std::size_t>(s - w)];
        if (k >= 1)
            b.rows[k - 1] = row;
    }
    b.count = row[static_cast<std::size_t>(T)];
    return b;
}

SolutionSampler::SolutionSampler(DiophSystem sys, const SamplerBudget& budget) : sys_(std::move(sys))
{
    if (sys_.blocks.empty())
        throw PreconditionError("system has no blocks");
    count_ = 1;
    for (const auto& u : sys_.blocks) {
        if (u.empty())
            throw PreconditionError("empty block");
        for (std::int64_t x : u)
            if (x < 1)
                throw PreconditionError("u-values must be positive");
        blocks_.push_back(build(u, sys_.p, budget));
        count_ *= blocks_.back().count;
    }
}

BigInt SolutionSampler::suffix_count(const Block& b, std::size_t k, std::int64_t t) const
{
    // Solutions of sum_(j >= k) u_j x_j = t.
    const std::size_t d = b.u.size();
    if (t < 0)
        return 0;
    if (k == d - 1)
        return t % b.u[d - 1] == 0 ? 1 : 0;
    if (b.all_ones)
        return binomial(t + static_cast<std::int64_t>(d - k) - 1, static_cast<std::int64_t>(d - k) - 1);
    return b.rows[k - 1][static_cast<std::size_t>(t)];
}

std::vector<std::int64_t> SolutionSampler::draw_block(const Block& b, Rng& rng) const
{
    const std::size_t d = b.u.size();
    std::vector<std::int64_t> mu(d);
    std::int64_t t = b.slack;
    for (std::size_t k = 0; k + 1 < d; ++k) {
        BigInt total = k == 0 ? b.count : suffix_count(b, k, t);
        BigInt r = uniform_below(total, rng);
        std::int64_t x = 0;
        if (b.all_ones) {
            // Weight of x is C(t - x + rest - 1, rest - 1); update it in place.
            const auto rest = static_cast<std::int64_t>(d - k - 1);
            BigInt w = binomial(t + rest - 1, rest - 1);
            while (r >= w) {
                r -= w;
                // C(n-1, rest-1) = C(n, rest-1) (n - rest + 1) / n with n = t - x + rest - 1.
                const std::int64_t n = t - x + rest - 1;
                w *= static_cast<unsigned long>(n - rest + 1);
                mpz_divexact_ui(w.get_mpz_t(), w.get_mpz_t(), static_cast<unsigned long>(n));
                ++x;
            }
        } else {
            while (true) {
                BigInt w = suffix_count(b, k + 1, t - x * b.u[k]);
                if (r < w)
                    break;
                r -= w;
                ++x;
            }
        }
        mu[k] = x + 1;
        t -= x * b.u[k];
    }
    mu[d - 1] = t / b.u[d - 1] + 1;
    return mu;
}

PartitionSolution SolutionSampler::draw(Rng& rng) const
{
    if (count_ == 0)
        throw EmptySolutionSet(fmt::format("no positive solutions for p = {}", sys_.p));
    PartitionSolution sol;
    for (const Block& b : blocks_)
        sol.blocks.push_back(draw_block(b, rng));
    return sol;
}

PartitionSolution sample_uniform(const DiophSystem& sys, std::uint64_t seed)
{
    SolutionSampler sampler(sys);
    Rng rng(seed);
    return sampler.draw(rng);
}

MultiplicityAssignment assign(const Arrangement& a, const ResolvedArrangement& ra,
                              const PartitionSolution& sol, PrimeModulus p)
{
    check_solution(system_for(a, p), sol);
    const std::vector<std::int64_t> mu = mu_by_curve(a, sol);
    MultiplicityAssignment ma;
    ma.p = p.value();
    ma.nu.reserve(ra.divisors.size());
    for (const ResolvedCurve& c : ra.divisors) {
        if (c.kind == DivisorKind::ProperTransform) {
            ma.nu.push_back(mu[c.source]);
            continue;
        }
        std::int64_t sum = 0;
        for (std::size_t i : c.over)
            sum = (sum + mu[i]) % ma.p;
        if (sum == 0)
            throw ExceptionalVanishes(fmt::format("multiplicity of {} vanishes mod {}", c.id, ma.p));
        ma.nu.push_back(sum);
    }
    return ma;
}

MultiplicityAssignment assignment_from_nu(const ResolvedArrangement& ra, std::vector<std::int64_t> nu,
                                          PrimeModulus p)
{
    if (nu.size() != ra.divisors.size())
        throw PreconditionError(fmt::format("{} multiplicities for {} divisors", nu.size(),
                                            ra.divisors.size()));
    for (std::int64_t v : nu)
        if (v <= 0 || v >= p.value())
            throw PreconditionError(fmt::format("multiplicity {} outside (0, {})", v, p.value()));
    return {p.value(), std::move(nu)};
}

std::int64_t node_residue(std::int64_t nu_i, std::int64_t nu_j, PrimeModulus p)
{
    const std::int64_t inv = mod_inverse(Residue(nu_i, p)).q();
    return p.value() - (inv * nu_j) % p.value();
}

std::vector<NodeResidue> node_residues(const MultiplicityAssignment& ma, const ResolvedArrangement& ra,
                                       Orientation orientation)
{
    if (ma.nu.size() != ra.divisors.size())
        throw PreconditionError("assignment does not match the resolution");
    PrimeModulus p(ma.p);
    std::vector<NodeResidue> out;
    out.reserve(ra.nodes.size());
    for (const auto& [pair, count] : ra.nodes) {
        auto [i, j] = pair;
        std::int64_t q = orientation == Orientation::LowerFirst ? node_residue(ma.nu[i], ma.nu[j], p)
                                                                : node_residue(ma.nu[j], ma.nu[i], p);
        out.push_back({i, j, q, count});
    }
    return out;
}

GoodnessReport is_good(const MultiplicityAssignment& ma, const ResolvedArrangement& ra,
                       const FareyConfig& cfg)
{
    PrimeModulus p(ma.p);
    GoodnessReport rep;
    for (const NodeResidue& n : node_residues(ma, ra))
        if (is_farey_neighbour(n.q, p, cfg))
            rep.offending.push_back(n);
    rep.good = rep.offending.empty();
    return rep;
}

GoodSample sample_good(const SolutionSampler& sampler, const Arrangement& a,
                       const ResolvedArrangement& ra, Rng& rng, std::int64_t max_tries,
                       const FareyConfig& cfg)
{
    if (max_tries < 1)
        throw PreconditionError("max_tries must be at least 1");
    PrimeModulus p(sampler.system().p);
    for (std::int64_t tries = 1; tries <= max_tries; ++tries) {
        PartitionSolution sol = sampler.draw(rng);
        MultiplicityAssignment ma;
        try {
            ma = assign(a, ra, sol, p);
        } catch (const ExceptionalVanishes&) {
            continue;
        }
        if (is_good(ma, ra, cfg).good)
            return {std::move(sol), std::move(ma), tries};
    }
    throw ExhaustedTries(fmt::format("no good solution for p = {} in {} tries", p.value(), max_tries));
}

GoodSample sample_good(const DiophSystem& sys, const Arrangement& a, const ResolvedArrangement& ra,
                       std::uint64_t seed, std::int64_t max_tries, const FareyConfig& cfg)
{
    SolutionSampler sampler(sys);
    Rng rng(seed);
    return sample_good(sampler, a, ra, rng, max_tries, cfg);
}

} // namespace randsurf
