#include "oracles.hpp"

#include "randsurf/covers.hpp"
#include "randsurf/errors.hpp"
#include "randsurf/floor_sum.hpp"
#include "randsurf/generators.hpp"
#include "randsurf/partition_io.hpp"
#include "randsurf/scan.hpp"
#include "randsurf/tables.hpp"

#include <doctest.h>

using namespace randsurf;

namespace {

PartitionSolution inline_partition(const char* s) { return parse_partition_inline(s); }

// Random divisible assignment: a uniform solution of the arrangement's system.
CoverSpec random_cover(const Arrangement& a, const ResolvedArrangement& ra, PrimeModulus p, Rng& rng)
{
    SolutionSampler s(system_for(a, p));
    while (true) {
        try {
            return CoverSpec{p, ra, assign(a, ra, s.draw(rng), p), {}};
        } catch (const ExceptionalVanishes&) {
        }
    }
}

Rational R(std::int64_t n) { return Rational(to_bigint(n)); }

} // namespace

TEST_CASE("dual Hesse table at p = 61169")
{
    Arrangement h = gen_dual_hesse();
    PrimeModulus p(61169);
    ChernReport r = report_for_partition(h, p, inline_partition("1+2+3+4+5+6+7+8+61133"));
    CHECK(r.c1_sq == 1441949);
    CHECK(r.c2 == 733435);
    CHECK(r.chi == 181282);
    CHECK(12 * r.chi == r.c1_sq + r.c2);
    CHECK(*r.ratio_c == Rational(BigInt(1441949), BigInt(733435)));

    ChernReport ones = report_for_partition(h, p, inline_partition("1+1+1+1+1+1+1+1+61161"));
    CHECK(ones.c1_sq == 1386413);
    CHECK(ones.c2 == 1060303);
    CHECK_FALSE(ones.good);
    CHECK_FALSE(ones.bounds.asserted);
    CHECK(ones.bounds_ok);

    TableResult t = run_table(load_table("dual-hesse-fixed-p"));
    CHECK(t.rows.size() == 9);
    for (const TableRowResult& row : t.rows)
        for (const TableCheck& c : row.checks)
            CHECK_MESSAGE(c.pass, "line ", row.row.line, " ", c.key, ": ", c.expected, " vs ", c.computed);
    CHECK(t.pass());
}

TEST_CASE("dual Hesse over sixteen primes")
{
    TableResult t = run_table(load_table("dual-hesse-primes"));
    CHECK(t.rows.size() == 16);
    for (const TableRowResult& row : t.rows) {
        CHECK(12 * row.report.chi == row.report.c1_sq + row.report.c2);
        for (const TableCheck& c : row.checks)
            CHECK_MESSAGE(c.pass, "p=", row.row.p, " ", c.key, ": ", c.expected, " vs ", c.computed);
    }
    CHECK(t.pass());
    // The leading terms take over: c1^2/p -> 24 and c2/p -> 9.
    const ChernReport& last = t.rows.back().report;
    REQUIRE(last.p == 544109);
    CHECK(std::abs(to_double(Rational(last.c1_sq, BigInt(544109))) / 24 - 1) < 0.01);
    CHECK(std::abs(to_double(Rational(last.c2, BigInt(544109))) / 9 - 1) < 0.01);
}

TEST_CASE("blown-up CEVA(5) at p = 61169")
{
    Arrangement a = gen_underline_ceva(5);
    ChernReport r = report_for_partition(
        a, PrimeModulus(61169),
        inline_partition("1+307+7031+11109+42721;589+2007+5007+20001+33565;1009+3001+13003+17807+26349"));
    CHECK(r.c1_sq == 4341016);
    CHECK(r.c2 == 1595264);
    CHECK(*r.ratio_c == Rational(BigInt(542627), BigInt(199408)));
    CHECK(r.log.c1bar_sq == 71);
    CHECK(r.log.c2bar == 26);
    CHECK(run_table(load_table("ceva5-blowup")).pass());
}

TEST_CASE("Noether, integrality and CCF = 12 SCF + LCF on random covers")
{
    std::vector<Arrangement> arrs{gen_general_lines(3), gen_general_lines(4), gen_dual_hesse(), gen_ceva(3),
                                  gen_underline_ceva(3), gen_p1xp1(3, 3, 3)};
    Rng rng(99);
    auto primes = oracle::primes_between(11, 200);
    int instances = 0;
    for (const Arrangement& a : arrs) {
        ResolvedArrangement ra = resolve(a);
        for (int k = 0; k < 20; ++k) {
            PrimeModulus p(primes[rng() % primes.size()]);
            if (count_solutions(system_for(a, p)) == 0)
                continue;
            CoverSpec spec = random_cover(a, ra, p, rng);
            ErrorTerms e = error_terms(node_terms(spec));
            CHECK(e.CCF == 12 * e.SCF + R(e.LCF));
            Rational x = chi_exact(spec, e), y = c1_sq_exact(spec, e), z = c2_exact(spec, e);
            CHECK(x.get_den() == 1);
            CHECK(y.get_den() == 1);
            CHECK(z.get_den() == 1);
            CHECK(12 * x == y + z);
            ++instances;
        }
    }
    CHECK(instances > 100);
}

TEST_CASE("report does not depend on node orientation")
{
    Arrangement h = gen_dual_hesse();
    ResolvedArrangement ra = resolve(h);
    Rng rng(4);
    for (std::int64_t pv : {101, 1009, 61169}) {
        PrimeModulus p(pv);
        for (int k = 0; k < 5; ++k) {
            CoverSpec lo = random_cover(h, ra, p, rng);
            CoverSpec hi = lo;
            hi.orientation = Orientation::UpperFirst;
            ChernReport a = report(lo), b = report(hi);
            CHECK(a.chi == b.chi);
            CHECK(a.c1_sq == b.c1_sq);
            CHECK(a.c2 == b.c2);
            CHECK(a.error_terms.SCF == b.error_terms.SCF);
            CHECK(a.error_terms.CCF == b.error_terms.CCF);
            CHECK(a.error_terms.LCF == b.error_terms.LCF);
            CHECK(a.good == b.good);
        }
    }
}

TEST_CASE("floor-sum oracle agrees with the engine")
{
    Arrangement tri = gen_general_lines(3);
    ResolvedArrangement rt = resolve(tri);
    PrimeModulus p7(7);
    CoverSpec t{p7, rt, assignment_from_nu(rt, {1, 2, 4}, p7), {}};
    FloorSumResult f = floor_sum_oracle(t);
    CHECK(f.chi == chi_exact(t, error_terms(node_terms(t))));
    CHECK(f.c1_sq == c1_sq_exact(t, error_terms(node_terms(t))));

    // 1 + 2 + 3 is not divisible by 7: no cover exists, the two rational
    // expressions still agree, and the integral API refuses.
    CoverSpec odd{p7, rt, assignment_from_nu(rt, {1, 2, 3}, p7), {}};
    CHECK(floor_sum_oracle(odd).chi == Rational(5, 7));
    CHECK(chi_exact(odd, error_terms(node_terms(odd))) == Rational(5, 7));
    CHECK(c1_sq_exact(odd, error_terms(node_terms(odd))) == floor_sum_oracle(odd).c1_sq);
    CHECK_THROWS_AS(chi(odd), NonIntegralError);

    PrimeModulus p5(5);
    CoverSpec ones{p5, rt, assignment_from_nu(rt, {1, 1, 3}, p5), {}};
    CHECK(floor_sum_oracle(ones).chi == R(chi(ones).get_si()));
    CHECK(floor_sum_oracle(ones).c1_sq == R(c1_sq(ones).get_si()));

    std::vector<Arrangement> arrs{tri, gen_general_lines(4), gen_dual_hesse(), gen_underline_ceva(3)};
    Rng rng(17);
    for (const Arrangement& a : arrs) {
        ResolvedArrangement ra = resolve(a);
        for (std::int64_t pv : oracle::primes_between(11, 120)) {
            PrimeModulus p(pv);
            if (count_solutions(system_for(a, p)) == 0)
                continue;
            CoverSpec spec = random_cover(a, ra, p, rng);
            FloorSumResult fs = floor_sum_oracle(spec);
            ChernReport r = report(spec);
            CHECK(fs.chi == Rational(r.chi));
            CHECK(fs.c1_sq == Rational(r.c1_sq));
        }
    }
    PrimeModulus big(10007);
    CoverSpec large{big, rt, assignment_from_nu(rt, {1, 2, 10004}, big), {}};
    CHECK_THROWS_AS(floor_sum_oracle(large), BudgetError);
    CHECK_NOTHROW(floor_sum_oracle(large, FloorSumBudget{20000}));
}

TEST_CASE("bracket sum identities")
{
    for (std::int64_t pv : oracle::primes_between(3, 60)) {
        PrimeModulus p(pv);
        const Rational P = R(pv);
        for (std::int64_t a = 1; a < pv; ++a) {
            const Rational A = R(a);
            const Rational saa(bracket_sum(a, a, p));
            // sum i [a i / p] = (a^2 - 1)(p - 1)(2p - 1)/(12a) + p S(a, a; p)/(2a)
            CHECK(Rational(weighted_floor_sum(a, p)) ==
                  (A * A - 1) * (P - 1) * (2 * P - 1) / (12 * A) + P * saa / (2 * A));
            // s(a, p) = (p-1)(2pa^2 - a^2 - 3ap + 2p - 1)/(12ap) - S(a, a; p)/(2a)
            CHECK(oracle::dedekind(a, pv) ==
                  (P - 1) * (2 * P * A * A - A * A - 3 * A * P + 2 * P - 1) / (12 * A * P) - saa / (2 * A));
            for (std::int64_t b = 1; b < pv; ++b) {
                const Rational B = R(b);
                const Rational sab(bracket_sum(a, b, p));
                const std::int64_t ab = oracle::inverse(a, pv) * b % pv;
                CHECK(sab == oracle::dedekind(ab, pv) - A * oracle::dedekind(b, pv) - B * oracle::dedekind(a, pv) +
                                 (P - 1) / (12 * P) * (3 * P - 3 * P * A - 3 * P * B + 2 * A * B * (2 * P - 1)));
                const Rational sbb(bracket_sum(b, b, p));
                CHECK(-(A / B) * sbb - (B / A) * saa + 2 * sab ==
                      (1 - P) / (6 * A * B * P) * (A * A * (2 * P - 1) + B * B * (2 * P - 1) - 3 * A * B * P) +
                          2 * oracle::dedekind(ab, pv));
            }
        }
    }
}

TEST_CASE("closed forms for r general lines with weights 1, ..., 1, p - q")
{
    for (std::int64_t pv : {101, 1009}) {
        PrimeModulus p(pv);
        const Rational P = R(pv);
        for (std::int64_t r = 3; r <= 8; ++r) {
            Arrangement a = gen_general_lines(static_cast<int>(r));
            ResolvedArrangement ra = resolve(a);
            const Rational Rr = R(r);
            for (std::int64_t q = 1; q < r; ++q) {
                std::vector<std::int64_t> nu(static_cast<std::size_t>(r), 1);
                nu.back() = pv - q;
                CoverSpec spec{p, ra, assignment_from_nu(ra, nu, p), {}};
                ErrorTerms e = error_terms(node_terms(spec));
                const Rational s1 = (P - 1) * (P - 2) / (12 * P);
                CHECK(oracle::dedekind(1, pv) == s1);
                const Rational chi_closed = P - (P * P - 1) * Rr / (12 * P) - (P - 1) * Rr * (5 - Rr) / 8 +
                                            (Rr - 1) * (Rr - 2) * (P - 1) * (P - 2) / (24 * P) +
                                            (Rr - 1) * oracle::dedekind(pv - q, pv);
                const std::int64_t l = static_cast<std::int64_t>(oracle::ncf(q, pv).size());
                const Rational c2_closed = 3 * P + (1 - P) * Rr * (5 - Rr) / 2 +
                                           (Rr - 1) * (Rr - 2) / 2 * (P - 1) + (Rr - 1) * R(l);
                const Rational x = chi_exact(spec, e), z = c2_exact(spec, e);
                CHECK(x == chi_closed);
                CHECK(z == c2_closed);
                CHECK(c1_sq_exact(spec, e) == 12 * chi_closed - c2_closed);
            }
        }
    }
}

TEST_CASE("square-root bounds")
{
    Arrangement h = gen_dual_hesse();
    ResolvedArrangement ra = resolve(h);
    PrimeModulus p(61169);
    DiophSystem sys = system_for(h, p);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        GoodSample g = sample_good(sys, h, ra, seed, 100);
        ChernReport r = report(CoverSpec{p, ra, g.assignment, {}});
        CHECK(r.good);
        CHECK(r.bounds.asserted);
        CHECK(r.bounds.all());
        CHECK(r.bounds_ok);
    }
    // A wider neighbourhood is not the asserted case.
    GoodSample g = sample_good(sys, h, ra, 1, 100, FareyConfig(Rational(1, 2)));
    ChernReport r = report(CoverSpec{p, ra, g.assignment, FareyConfig(Rational(1, 2))});
    CHECK_FALSE(r.bounds.asserted);

    ErrorTerms big;
    big.SCF = 1000000;
    big.CCF = 1;
    big.LCF = 1;
    BoundChecks b = check_bounds(big, 30, p, {}, true);
    CHECK_FALSE(b.scf);
    CHECK(b.lcf);
    CHECK(b.ccf);
    CHECK_FALSE(b.all());
    // N (3 sqrt p + 2) with N = 30, p = 61169: 30 * 3 * 247.32.. + 60 = 22319.0..
    CHECK(check_bounds(ErrorTerms{0, 0, 22319}, 30, p, {}, true).lcf);
    CHECK_FALSE(check_bounds(ErrorTerms{0, 0, 22320}, 30, p, {}, true).lcf);
}

TEST_CASE("convergence scan")
{
    std::vector<std::int64_t> primes{10103, 61169};
    CHECK_THROWS_AS(convergence_scan(gen_general_lines(3), primes, {}), PreconditionError);

    Arrangement h = gen_dual_hesse();
    ScanOptions one;
    one.samples_per_prime = 5;
    one.seed = 42;
    one.workers = 1;
    ScanOptions many = one;
    many.workers = 4;
    ScanResult a = convergence_scan(h, primes, one);
    ScanResult b = convergence_scan(h, primes, many);
    CHECK(a.log_ratio == Rational(8, 3));
    REQUIRE(a.rows.size() == 2);
    REQUIRE(a.samples.size() == 10);
    REQUIRE(b.samples.size() == 10);
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        CHECK(a.samples[i].solution == b.samples[i].solution);
        CHECK(a.samples[i].report.c1_sq == b.samples[i].report.c1_sq);
        CHECK(a.samples[i].report.good);
    }
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].median == b.rows[i].median);
        CHECK(a.rows[i].min <= a.rows[i].median);
        CHECK(a.rows[i].median <= a.rows[i].max);
        CHECK(a.rows[i].deviation == abs(a.rows[i].median - a.log_ratio));
    }

    // A prime where every residue is bad cannot yield a good sample.
    std::int64_t full = 0;
    for (std::int64_t q : oracle::primes_between(11, 200))
        if (static_cast<std::int64_t>(bad_set(PrimeModulus(q)).size()) == q) {
            full = q;
            break;
        }
    REQUIRE(full > 0);
    std::vector<std::int64_t> mixed{full, 61169};
    ScanOptions quick = one;
    ScanResult s = convergence_scan(h, mixed, quick);
    REQUIRE(s.skipped.size() == 1);
    CHECK(s.skipped[0].p == full);
    CHECK(s.rows.size() == 1);
    // Good assignments are rare at small p: 21 divisors give many residues.
    ScanResult small = convergence_scan(h, std::vector<std::int64_t>{1009}, one);
    CHECK(small.rows.empty());
    CHECK(small.skipped.size() == 1);
}

TEST_CASE("median")
{
    CHECK(median({R(3), R(1), R(2)}) == 2);
    CHECK(median({R(4), R(1), R(2), R(3)}) == Rational(5, 2));
    CHECK_THROWS_AS(median({}), PreconditionError);
}
