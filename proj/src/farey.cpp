#include "randsurf/farey.hpp"

#include "randsurf/errors.hpp"

#include <fmt/format.h>

namespace randsurf {

FareyConfig::FareyConfig(Rational c) : C(std::move(c))
{
    if (sgn(C) <= 0)
        throw PreconditionError("Farey scale C must be positive, got " + to_string(C));
}

namespace {

using u128 = unsigned __int128;

// Decides x * d <= C sqrt(p) for the integer distance x = |q d - p c|, i.e.
// (x d)^2 den^2 <= num^2 p with C = num/den.
class NeighbourhoodTest {
public:
    NeighbourhoodTest(std::int64_t p, const Rational& c)
    {
        const BigInt& num = c.get_num();
        const BigInt& den = c.get_den();
        fast_ = num < 65536 && den < 65536;
        if (fast_) {
            auto n = static_cast<u128>(num.get_ui());
            auto d = static_cast<u128>(den.get_ui());
            rhs_ = n * n * static_cast<u128>(p);
            den2_ = d * d;
        } else {
            rhs_big_ = num * num * to_bigint(p);
            den2_big_ = den * den;
        }
    }

    bool operator()(std::int64_t distance, std::int64_t d) const
    {
        // distance <= p and d <= sqrt(p) < 2^16, so the product fits in 48 bits.
        auto x = static_cast<u128>(distance) * static_cast<u128>(d);
        if (fast_)
            return x * x * den2_ <= rhs_;
        BigInt xb = to_bigint(static_cast<std::int64_t>(x));
        return xb * xb * den2_big_ <= rhs_big_;
    }

private:
    bool fast_ = false;
    u128 rhs_ = 0, den2_ = 0;
    BigInt rhs_big_, den2_big_;
};

std::int64_t abs_diff(std::int64_t a, std::int64_t b) { return a > b ? a - b : b - a; }

} // namespace

bool is_farey_neighbour(std::int64_t q, PrimeModulus p, const FareyConfig& cfg)
{
    const std::int64_t pv = p.value();
    if (q < 0 || q >= pv)
        throw PreconditionError(fmt::format("is_farey_neighbour: q={} outside [0, {})", q, pv));
    NeighbourhoodTest within(pv, cfg.C);
    const std::int64_t dmax = isqrt(pv);
    for (std::int64_t d = 1; d <= dmax; ++d) {
        const std::int64_t qd = q * d;
        const std::int64_t c0 = qd / pv;
        // |qd - pc| grows monotonically away from qd/p in both directions.
        for (std::int64_t c = c0; c >= 0; --c) {
            if (!within(abs_diff(qd, pv * c), d))
                break;
            if (c <= d && gcd(c, d) == 1)
                return true;
        }
        for (std::int64_t c = c0 + 1; c <= d; ++c) {
            if (!within(abs_diff(qd, pv * c), d))
                break;
            if (gcd(c, d) == 1)
                return true;
        }
    }
    return false;
}

std::vector<std::int64_t> bad_set(PrimeModulus p, const FareyConfig& cfg,
                                  const EnumerationBudget& budget)
{
    const std::int64_t pv = p.value();
    if (pv > budget.max_modulus)
        throw BudgetError(fmt::format("bad set enumeration for p={} exceeds budget (max {})", pv,
                                      budget.max_modulus));
    NeighbourhoodTest within(pv, cfg.C);
    std::vector<char> member(static_cast<std::size_t>(pv), 0);
    const std::int64_t dmax = isqrt(pv);
    for (std::int64_t d = 1; d <= dmax; ++d) {
        for (std::int64_t c = 0; c <= d; ++c) {
            if (gcd(c, d) != 1)
                continue;
            const std::int64_t pc = pv * c;
            const std::int64_t q0 = pc / d;
            for (std::int64_t q = std::min(q0, pv - 1); q >= 0; --q) {
                if (!within(abs_diff(q * d, pc), d))
                    break;
                member[static_cast<std::size_t>(q)] = 1;
            }
            for (std::int64_t q = q0 + 1; q < pv; ++q) {
                if (!within(abs_diff(q * d, pc), d))
                    break;
                member[static_cast<std::size_t>(q)] = 1;
            }
        }
    }
    std::vector<std::int64_t> out;
    for (std::int64_t q = 0; q < pv; ++q)
        if (member[static_cast<std::size_t>(q)])
            out.push_back(q);
    return out;
}

BoundVerdict bad_set_size_bound(std::int64_t count, PrimeModulus p, const FareyConfig& cfg)
{
    // log p + 2 log 2 = log 4p.
    return check_sqrt_log_bound(to_bigint(count), cfg.C, to_bigint(p.value()),
                                to_bigint(4 * p.value()));
}

bool dedekind_bound_holds(const Rational& s, PrimeModulus p, const FareyConfig& cfg)
{
    Rational slope = 2 + 1 / cfg.C;
    return le_affine_sqrt(abs(s), slope, Rational(5), to_bigint(p.value()));
}

bool length_bound_holds(std::int64_t l, PrimeModulus p, const FareyConfig& cfg)
{
    Rational slope = 2 + 1 / cfg.C;
    return le_affine_sqrt(Rational(to_bigint(l)), slope, Rational(2), to_bigint(p.value()));
}

} // namespace randsurf
