#pragma once

// Invariants of the p-th root cover X branched along sum nu_i D_i on the log
// resolution: chi(O_X), c1^2(X), c2(X), the node error terms and their
// square-root bounds.

#include "randsurf/arrangement.hpp"
#include "randsurf/farey.hpp"
#include "randsurf/numth.hpp"
#include "randsurf/partitions.hpp"
#include "randsurf/rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace randsurf {

struct CoverSpec {
    PrimeModulus p;
    ResolvedArrangement resolved;
    MultiplicityAssignment nu;
    FareyConfig farey;
    Orientation orientation = Orientation::LowerFirst;
};

/// Throws PreconditionError unless every divisor carries nu in (0, p) for this p.
void check_cover_spec(const CoverSpec& spec);

/// l, s and c of one node residue.
struct NodeTerms {
    NodeResidue node;
    std::int64_t l = 0;
    Rational s;
    Rational c;
};

/// Per-node quantities, computed once and shared by the three formulas.
std::vector<NodeTerms> node_terms(const CoverSpec& spec);

struct ErrorTerms {
    Rational SCF;      ///< sum s(q, p) D_i.D_j
    Rational CCF;      ///< sum c(q, p) D_i.D_j
    std::int64_t LCF = 0;  ///< sum l(q, p) D_i.D_j
};

ErrorTerms error_terms(const std::vector<NodeTerms>& nodes);

/// The three formulas over exact rationals, before any integrality check.
Rational chi_exact(const CoverSpec& spec, const ErrorTerms& err);
Rational c1_sq_exact(const CoverSpec& spec, const ErrorTerms& err);
Rational c2_exact(const CoverSpec& spec, const ErrorTerms& err);

/// Integral values; throw NonIntegralError if a formula does not clear denominators.
BigInt chi(const CoverSpec& spec);
BigInt c1_sq(const CoverSpec& spec);
BigInt c2(const CoverSpec& spec);

/// Square-root bounds with N = number of nodes:
/// |SCF| < N (a sqrt p + 5), LCF < N (a sqrt p + 2), |CCF| < N (2a sqrt p + 7), a = 2 + 1/C.
struct BoundChecks {
    bool scf = false;
    bool lcf = false;
    bool ccf = false;
    /// Only good assignments with C = 1 are required to satisfy them.
    bool asserted = false;

    bool all() const { return scf && lcf && ccf; }
};

BoundChecks check_bounds(const ErrorTerms& err, std::int64_t nodes, PrimeModulus p,
                         const FareyConfig& cfg, bool good);

struct ChernReport {
    std::int64_t p = 0;
    BigInt chi;
    BigInt c1_sq;
    BigInt c2;
    std::optional<Rational> ratio_c;    ///< c1^2 / c2
    std::optional<Rational> ratio_chi;  ///< c1^2 / chi
    ErrorTerms error_terms;
    LogChernNumbers log;
    std::int64_t node_total = 0;
    bool good = false;
    std::vector<NodeResidue> offending;
    BoundChecks bounds;
    /// True unless the bounds are asserted and fail.
    bool bounds_ok = true;
};

ChernReport report(const CoverSpec& spec);

/// Convenience: resolve, assign and report for an explicit partition.
ChernReport report_for_partition(const Arrangement& a, PrimeModulus p, const PartitionSolution& sol,
                                 const FareyConfig& cfg = {});

/// CoverSpec for an explicit partition of `a`.
CoverSpec cover_for_partition(const Arrangement& a, const ResolvedArrangement& ra, PrimeModulus p,
                              const PartitionSolution& sol, const FareyConfig& cfg = {});

} // namespace randsurf
