#include "randsurf/numth.hpp"

#include "randsurf/errors.hpp"

#include <fmt/format.h>

#include <cmath>

namespace randsurf {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1)
            r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

} // namespace

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % small == 0)
            return n == small;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    // This witness set is deterministic below 2^64.
    for (std::uint64_t a : {2, 325, 9375, 28178, 450775, 9780504, 1795265022}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 0 || x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

PrimeModulus::PrimeModulus(std::int64_t p) : p_(p)
{
    if (p < 3 || p > kMaxModulus)
        throw PreconditionError(fmt::format("modulus {} outside [3, {}]", p, kMaxModulus));
    if (!is_prime(static_cast<std::uint64_t>(p)))
        throw PreconditionError(fmt::format("modulus {} is not prime", p));
}

Residue::Residue(std::int64_t q, PrimeModulus p) : q_(q), p_(p)
{
    if (q <= 0 || q >= p.value())
        throw PreconditionError(fmt::format("residue {} outside (0, {})", q, p.value()));
}

std::int64_t gcd(std::int64_t a, std::int64_t b) noexcept
{
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::int64_t isqrt(std::int64_t n) noexcept
{
    if (n <= 0)
        return 0;
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n)
        --r;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

Residue mod_inverse(const Residue& q)
{
    std::int64_t p = q.p();
    std::int64_t r0 = p, r1 = q.q();
    std::int64_t t0 = 0, t1 = 1;
    while (r1 != 0) {
        std::int64_t k = r0 / r1;
        std::int64_t r2 = r0 - k * r1;
        r0 = r1;
        r1 = r2;
        std::int64_t t2 = t0 - k * t1;
        t0 = t1;
        t1 = t2;
    }
    // r0 == 1 since p is prime.
    std::int64_t inv = t0 % p;
    if (inv < 0)
        inv += p;
    return Residue(inv, q.modulus());
}

NcfExpansion ncf_expand(const Residue& q)
{
    NcfExpansion out;
    std::int64_t prev = q.p(), cur = q.q();
    out.b.push_back(prev);
    out.b.push_back(cur);
    // b_{i-2} = b_{i-1} e_i - b_i with 0 <= b_i < b_{i-1}, i.e. e_i = ceil(b_{i-2}/b_{i-1}).
    while (cur != 0) {
        std::int64_t e = (prev + cur - 1) / cur;
        std::int64_t next = e * cur - prev;
        out.e.push_back(e);
        out.b.push_back(next);
        prev = cur;
        cur = next;
    }
    return out;
}

Rational ncf_eval(std::span<const std::int64_t> e)
{
    if (e.empty())
        throw PreconditionError("ncf_eval: empty sequence");
    // P_i = e_i P_{i-1} - P_{i-2}, Q_i likewise; P_i/Q_i = [e_1, ..., e_i].
    BigInt p_prev = 0, p_cur = 1;
    BigInt q_prev = -1, q_cur = 0;
    for (std::int64_t ei : e) {
        if (ei < 2)
            throw PreconditionError(fmt::format("ncf_eval: partial quotient {} < 2", ei));
        BigInt ez = to_bigint(ei);
        BigInt p_next = ez * p_cur - p_prev;
        BigInt q_next = ez * q_cur - q_prev;
        p_prev = std::move(p_cur);
        p_cur = std::move(p_next);
        q_prev = std::move(q_cur);
        q_cur = std::move(q_next);
    }
    Rational r(p_cur, q_cur);
    r.canonicalize();
    return r;
}

std::int64_t length(const Residue& q)
{
    std::int64_t prev = q.p(), cur = q.q(), s = 0;
    while (cur != 0) {
        std::int64_t e = (prev + cur - 1) / cur;
        std::int64_t next = e * cur - prev;
        prev = cur;
        cur = next;
        ++s;
    }
    return s;
}

Rational canonical_part(const Residue& q)
{
    NcfExpansion x = ncf_expand(q);
    std::int64_t excess = 0;
    for (std::int64_t e : x.e)
        excess += e - 2;
    return make_rational(q.q() + mod_inverse(q).q(), q.p()) + to_bigint(excess);
}

Rational dedekind_brute(const Residue& q)
{
    // ((i/p)) ((iq/p)) = (2i - p)(2r_i - p) / (4p^2), r_i = iq mod p, since
    // neither i/p nor iq/p is an integer for 0 < i < p.
    const std::int64_t p = q.p();
    __int128 acc = 0;
    std::int64_t r = 0;
    for (std::int64_t i = 1; i < p; ++i) {
        r += q.q();
        if (r >= p)
            r -= p;
        acc += static_cast<__int128>(2 * i - p) * (2 * r - p);
    }
    // |acc| < p^3 < 2^93; split into two 64-bit halves for GMP.
    bool neg = acc < 0;
    auto mag = static_cast<unsigned __int128>(neg ? -acc : acc);
    BigInt num = BigInt(static_cast<unsigned long>(mag >> 64));
    num <<= 64;
    num += BigInt(static_cast<unsigned long>(mag & 0xFFFFFFFFFFFFFFFFull));
    if (neg)
        num = -num;
    Rational out(num, BigInt(4 * to_bigint(p) * to_bigint(p)));
    out.canonicalize();
    return out;
}

Rational dedekind_fast(const Residue& q)
{
    // s(h,k) + s(k,h) = (h^2 + k^2 + 1)/(12hk) - 1/4 and s(h,k) = s(h mod k, k).
    BigInt h = to_bigint(q.q());
    BigInt k = to_bigint(q.p());
    Rational acc = 0;
    int sign = 1;
    const Rational quarter(1, 4);
    while (h != 0) {
        Rational term(BigInt(h * h + k * k + 1), BigInt(12 * h * k));
        term.canonicalize();
        term -= quarter;
        if (sign > 0)
            acc += term;
        else
            acc -= term;
        BigInt next = k % h;
        k = h;
        h = next;
        sign = -sign;
    }
    return acc;
}

Rational dedekind_from_ncf(const Residue& q)
{
    NcfExpansion x = ncf_expand(q);
    std::int64_t excess = 0;
    for (std::int64_t e : x.e)
        excess += e - 3;
    Rational out = make_rational(q.q() + mod_inverse(q).q(), q.p()) + to_bigint(excess);
    out /= 12;
    return out;
}

std::int64_t rcf_total(std::int64_t n, std::int64_t m)
{
    if (n <= 0 || n >= m)
        throw PreconditionError(fmt::format("rcf_total: need 0 < n < m, got n={} m={}", n, m));
    if (gcd(n, m) != 1)
        throw PreconditionError(fmt::format("rcf_total: {} and {} are not coprime", n, m));
    std::int64_t total = 0;
    std::int64_t a = m, b = n;
    while (b != 0) {
        total += a / b;
        std::int64_t r = a % b;
        a = b;
        b = r;
    }
    return total;
}

std::vector<Rational> chain_discrepancies(const Residue& q)
{
    NcfExpansion x = ncf_expand(q);
    NcfExpansion y = ncf_expand(mod_inverse(q));
    const auto s = static_cast<std::ptrdiff_t>(x.length());
    std::vector<Rational> alpha;
    alpha.reserve(x.length());
    for (std::ptrdiff_t i = 1; i <= s; ++i)
        alpha.push_back(make_rational(x.remainder(i - 1) + y.remainder(s - i) - q.p(), q.p()));
    return alpha;
}

Rational chain_discrepancy_square(const Residue& q)
{
    NcfExpansion x = ncf_expand(q);
    std::vector<Rational> alpha = chain_discrepancies(q);
    Rational out = 0;
    for (std::size_t i = 0; i < alpha.size(); ++i)
        out += alpha[i] * to_bigint(x.e[i] - 2);
    return out;
}

} // namespace randsurf
