#include "ismq/rational.hpp"

#include "ismq/error.hpp"

#include <cctype>
#include <cmath>

namespace ismq {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char ch : s)
        if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    const auto slash = s.find('/');
    std::string_view num = s.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
        throw Error("bad_rational", "not an exact rational literal: '" + std::string(text) + "'");
    BigInt n(std::string(num), 10);
    BigInt d(std::string(den), 10);
    if (d == 0) throw Error("bad_rational", "zero denominator in '" + std::string(text) + "'");
    Rational q(n, d);
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) {
    return q.get_str(10);
}

Rational pow(const Rational& base, unsigned long exponent) {
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
    out.canonicalize();
    return out;
}

long double to_long_double(const Rational& q) {
    // top 64 bits of numerator and denominator, then rescale by the dropped bits
    auto top_bits = [](const BigInt& z, long& shift) {
        BigInt a = abs(z);
        const long bits = static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 2));
        shift = bits > 64 ? bits - 64 : 0;
        mpz_tdiv_q_2exp(a.get_mpz_t(), a.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
        return static_cast<long double>(mpz_get_ui(a.get_mpz_t()));
    };
    long sn = 0, sd = 0;
    const long double n = top_bits(q.get_num(), sn);
    const long double d = top_bits(q.get_den(), sd);
    const long double v = std::ldexp(n / d, static_cast<int>(sn - sd));
    return q < 0 ? -v : v;
}

}  // namespace ismq
