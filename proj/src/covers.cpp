#include "randsurf/covers.hpp"

#include "randsurf/errors.hpp"
#include "randsurf/exact_compare.hpp"

#include <fmt/format.h>

#include <unordered_map>

namespace randsurf {

void check_cover_spec(const CoverSpec& spec)
{
    if (spec.nu.p != spec.p.value())
        throw PreconditionError(fmt::format("assignment is mod {}, cover is mod {}", spec.nu.p,
                                            spec.p.value()));
    if (spec.nu.nu.size() != spec.resolved.divisors.size())
        throw PreconditionError("assignment does not cover every divisor");
    for (std::int64_t v : spec.nu.nu)
        if (v <= 0 || v >= spec.p.value())
            throw PreconditionError(fmt::format("multiplicity {} outside (0, {})", v, spec.p.value()));
}

std::vector<NodeTerms> node_terms(const CoverSpec& spec)
{
    check_cover_spec(spec);
    struct Cached {
        std::int64_t l;
        Rational s;
        Rational c;
    };
    std::unordered_map<std::int64_t, Cached> cache;
    std::vector<NodeTerms> out;
    for (const NodeResidue& n : node_residues(spec.nu, spec.resolved, spec.orientation)) {
        auto it = cache.find(n.q);
        if (it == cache.end()) {
            Residue q(n.q, spec.p);
            it = cache.emplace(n.q, Cached{length(q), dedekind_fast(q), canonical_part(q)}).first;
        }
        out.push_back({n, it->second.l, it->second.s, it->second.c});
    }
    return out;
}

ErrorTerms error_terms(const std::vector<NodeTerms>& nodes)
{
    ErrorTerms e;
    for (const NodeTerms& t : nodes) {
        BigInt k = to_bigint(t.node.count);
        e.SCF += t.s * k;
        e.CCF += t.c * k;
        e.LCF += t.l * t.node.count;
    }
    return e;
}

namespace {

struct Shared {
    Rational p;
    Rational self_sum;  // sum D_i^2
    Rational nodes_plus_defect;  // t2 + 2 sum (g_i - 1)
};

Shared shared_terms(const CoverSpec& spec)
{
    const ResolvedArrangement& ra = spec.resolved;
    return {Rational(to_bigint(spec.p.value())), Rational(to_bigint(ra.self_int_total())),
            Rational(to_bigint(ra.t2_total + 2 * ra.genus_defect()))};
}

} // namespace

Rational chi_exact(const CoverSpec& spec, const ErrorTerms& err)
{
    const Shared sh = shared_terms(spec);
    const SurfaceClass& y = spec.resolved.surface_Y;
    Rational chi_y = make_rational(y.c1_sq + y.c2, 12);
    Rational out = sh.p * chi_y;
    out -= (sh.p * sh.p - 1) / (12 * sh.p) * sh.self_sum;
    out += (sh.p - 1) / 4 * sh.nodes_plus_defect;
    out -= err.SCF;
    return out;
}

Rational c1_sq_exact(const CoverSpec& spec, const ErrorTerms& err)
{
    const Shared sh = shared_terms(spec);
    LogChernNumbers log = log_chern_resolved(spec.resolved);
    Rational out = sh.p * to_bigint(log.c1bar_sq);
    out -= 2 * sh.nodes_plus_defect;
    out += sh.self_sum / sh.p;
    out -= err.CCF;
    return out;
}

Rational c2_exact(const CoverSpec& spec, const ErrorTerms& err)
{
    const Shared sh = shared_terms(spec);
    LogChernNumbers log = log_chern_resolved(spec.resolved);
    Rational out = sh.p * to_bigint(log.c2bar);
    out -= sh.nodes_plus_defect;
    out += to_bigint(err.LCF);
    return out;
}

BigInt chi(const CoverSpec& spec)
{
    return require_integer(chi_exact(spec, error_terms(node_terms(spec))), "chi");
}

BigInt c1_sq(const CoverSpec& spec)
{
    return require_integer(c1_sq_exact(spec, error_terms(node_terms(spec))), "c1^2");
}

BigInt c2(const CoverSpec& spec)
{
    return require_integer(c2_exact(spec, error_terms(node_terms(spec))), "c2");
}

BoundChecks check_bounds(const ErrorTerms& err, std::int64_t nodes, PrimeModulus p,
                         const FareyConfig& cfg, bool good)
{
    const BigInt n = to_bigint(nodes);
    const BigInt pz = to_bigint(p.value());
    const Rational a = 2 + 1 / cfg.C;
    BoundChecks b;
    b.scf = lt_affine_sqrt(abs(err.SCF), a * n, Rational(5 * n), pz);
    b.lcf = lt_affine_sqrt(Rational(to_bigint(err.LCF)), a * n, Rational(2 * n), pz);
    b.ccf = lt_affine_sqrt(abs(err.CCF), 2 * a * n, Rational(7 * n), pz);
    b.asserted = good && cfg.C == 1;
    return b;
}

ChernReport report(const CoverSpec& spec)
{
    std::vector<NodeTerms> nodes = node_terms(spec);
    ChernReport r;
    r.p = spec.p.value();
    r.error_terms = error_terms(nodes);
    r.chi = require_integer(chi_exact(spec, r.error_terms), "chi");
    r.c1_sq = require_integer(c1_sq_exact(spec, r.error_terms), "c1^2");
    r.c2 = require_integer(c2_exact(spec, r.error_terms), "c2");
    if (r.c2 != 0)
        r.ratio_c = Rational(r.c1_sq, r.c2);
    if (r.chi != 0)
        r.ratio_chi = Rational(r.c1_sq, r.chi);
    if (r.ratio_c)
        r.ratio_c->canonicalize();
    if (r.ratio_chi)
        r.ratio_chi->canonicalize();
    r.log = log_chern_resolved(spec.resolved);
    r.node_total = spec.resolved.t2_total;
    // Goodness always uses the canonical orientation so the report does not
    // depend on spec.orientation.
    GoodnessReport g = is_good(spec.nu, spec.resolved, spec.farey);
    r.good = g.good;
    r.offending = std::move(g.offending);
    r.bounds = check_bounds(r.error_terms, r.node_total, spec.p, spec.farey, r.good);
    r.bounds_ok = !r.bounds.asserted || r.bounds.all();
    return r;
}

CoverSpec cover_for_partition(const Arrangement& a, const ResolvedArrangement& ra, PrimeModulus p,
                              const PartitionSolution& sol, const FareyConfig& cfg)
{
    return CoverSpec{p, ra, assign(a, ra, sol, p), cfg};
}

ChernReport report_for_partition(const Arrangement& a, PrimeModulus p, const PartitionSolution& sol,
                                 const FareyConfig& cfg)
{
    ResolvedArrangement ra = resolve(a);
    return report(cover_for_partition(a, ra, p, sol, cfg));
}

} // namespace randsurf
