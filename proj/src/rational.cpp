#include "randsurf/rational.hpp"

#include "randsurf/errors.hpp"

#include <cctype>

namespace randsurf {

BigInt to_bigint(std::int64_t v)
{
    // mpz_class has no int64 constructor on every platform; long is 64-bit on LP64.
    static_assert(sizeof(long) == sizeof(std::int64_t));
    return BigInt(static_cast<long>(v));
}

Rational make_rational(std::int64_t num, std::int64_t den)
{
    if (den == 0)
        throw PreconditionError("zero denominator");
    Rational r(to_bigint(num), to_bigint(den));
    r.canonicalize();
    return r;
}

std::string to_string(const BigInt& v) { return v.get_str(); }

std::string to_string(const Rational& v)
{
    if (v.get_den() == 1)
        return v.get_num().get_str();
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

namespace {

std::string scaled_decimal(const Rational& v, int digits, bool round_half_up)
{
    BigInt num = abs(v.get_num());
    const BigInt& den = v.get_den();
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    BigInt scaled = num * scale;
    if (round_half_up)
        scaled = BigInt(2 * scaled + den) / BigInt(2 * den);
    else
        mpz_tdiv_q(scaled.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
    BigInt ipart, fpart;
    mpz_tdiv_qr(ipart.get_mpz_t(), fpart.get_mpz_t(), scaled.get_mpz_t(), scale.get_mpz_t());
    std::string out = (sgn(v) < 0 && sgn(scaled) != 0) ? "-" : "";
    out += ipart.get_str();
    if (digits > 0) {
        std::string frac = fpart.get_str();
        out += '.';
        out.append(static_cast<std::size_t>(digits) - frac.size(), '0');
        out += frac;
    }
    return out;
}

} // namespace

std::string truncated_decimal(const Rational& v, int digits)
{
    return scaled_decimal(v, digits, false);
}

std::string rounded_decimal(const Rational& v, int digits)
{
    return scaled_decimal(v, digits, true);
}

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    auto bad = [&] { return PreconditionError("not a rational number: '" + s + "'"); };
    if (s.empty())
        throw bad();
    auto digits_only = [](std::string_view t, bool allow_sign) {
        std::size_t i = 0;
        if (allow_sign && !t.empty() && (t[0] == '-' || t[0] == '+'))
            ++i;
        if (i == t.size())
            return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i])))
                return false;
        return true;
    };
    auto to_z = [](std::string t) {
        if (!t.empty() && t[0] == '+')
            t.erase(0, 1);
        return BigInt(t, 10);
    };
    if (auto slash = s.find('/'); slash != std::string::npos) {
        std::string n = s.substr(0, slash), d = s.substr(slash + 1);
        if (!digits_only(n, true) || !digits_only(d, false))
            throw bad();
        BigInt den = to_z(d);
        if (den == 0)
            throw bad();
        Rational r(to_z(n), den);
        r.canonicalize();
        return r;
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
        bool neg = !ip.empty() && ip[0] == '-';
        if (ip == "-" || ip == "+" || ip.empty())
            ip += "0";
        if (!digits_only(ip, true) || !digits_only(fp, false))
            throw bad();
        BigInt scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
        BigInt whole = abs(to_z(ip)) * scale + to_z(fp);
        Rational r(neg ? BigInt(-whole) : whole, scale);
        r.canonicalize();
        return r;
    }
    if (!digits_only(s, true))
        throw bad();
    return Rational(to_z(s));
}

bool is_integer(const Rational& v) { return v.get_den() == 1; }

BigInt require_integer(const Rational& v, std::string_view what)
{
    if (!is_integer(v))
        throw NonIntegralError(std::string(what) + " evaluated to non-integer " + to_string(v));
    return v.get_num();
}

std::int64_t to_int64(const BigInt& v)
{
    if (!v.fits_slong_p())
        throw PreconditionError("integer " + v.get_str() + " does not fit in 64 bits");
    return v.get_si();
}

double to_double(const Rational& v) { return v.get_d(); }

} // namespace randsurf
