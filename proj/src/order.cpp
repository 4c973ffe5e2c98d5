#include "ismq/order.hpp"

#include "ismq/error.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace ismq {

namespace {

std::optional<Rational> small_rational(const Rational& q) {
    if (q.get_den() <= Order::kMaxExactDenominator && q.get_num().fits_ulong_p()) return q;
    return std::nullopt;
}

// exact value of a plain decimal literal, or nullopt for anything else
std::optional<Rational> decimal_literal(std::string_view s) {
    std::string digits;
    std::size_t frac = 0;
    bool dot = false;
    for (char ch : s) {
        if (ch == '.' && !dot) {
            dot = true;
        } else if (std::isdigit(static_cast<unsigned char>(ch))) {
            digits += ch;
            if (dot) ++frac;
        } else {
            return std::nullopt;
        }
    }
    if (digits.empty()) return std::nullopt;
    BigInt den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
    Rational q(BigInt(digits, 10), den);
    q.canonicalize();
    return q;
}

}  // namespace

Order::Order(double r) : value_(r) {
    if (!(r > 0) || !std::isfinite(r)) throw Error("bad_order", "order r must be positive and finite");
    // a double is a dyadic rational; keep it exact when its denominator is small
    exact_ = small_rational(Rational(r));
}

Order::Order(const Rational& r) : value_(r.get_d()) {
    if (r <= 0) throw Error("bad_order", "order r must be positive");
    exact_ = small_rational(r);
}

Order Order::parse(std::string_view text) {
    if (text.find('/') != std::string_view::npos) return Order(parse_rational(text));
    if (auto q = decimal_literal(text)) {
        if (*q <= 0) throw Error("bad_order", "order r must be positive");
        Order out(std::stod(std::string(text)));
        out.exact_ = small_rational(*q);
        return out;
    }
    try {
        std::size_t used = 0;
        const double r = std::stod(std::string(text), &used);
        if (used != text.size()) throw Error("bad_order", "cannot parse order '" + std::string(text) + "'");
        return Order(r);
    } catch (const std::logic_error&) {
        throw Error("bad_order", "cannot parse order '" + std::string(text) + "'");
    }
}

std::string Order::str() const {
    if (exact_) return to_string(*exact_);
    std::ostringstream os;
    os.precision(17);
    os << value_;
    return os.str();
}

Level Level::one(const Order& r) {
    Level out;
    out.exact_ = r.exact();
    return out;
}

Level Level::of(const Order& r, const Rational& a, const Rational& b) {
    if (a <= 0 || b <= 0) throw Error("bad_level", "level factors must be positive");
    Level out;
    out.exact_ = r.exact();
    if (out.exact_) out.power_ = ismq::pow(a, r.den()) * ismq::pow(b, r.num());
    const long double e = r.exact() ? static_cast<long double>(r.num()) / static_cast<long double>(r.den())
                                    : static_cast<long double>(r.value());
    out.approx_ = to_long_double(a) * std::pow(to_long_double(b), e);
    return out;
}

Level& Level::operator*=(const Level& o) {
    if (exact_ != o.exact_) throw Error("bad_level", "mixing exact and inexact levels");
    if (exact_) power_ *= o.power_;
    approx_ *= o.approx_;
    return *this;
}

Level Level::pow(unsigned long n) const {
    Level out = *this;
    if (exact_) out.power_ = ismq::pow(power_, n);
    out.approx_ = std::pow(approx_, static_cast<long double>(n));
    return out;
}

Comparison compare(const Level& x, const Level& y) {
    if (x.exact() && y.exact()) {
        const int c = cmp(x.power(), y.power());
        return {c < 0 ? -1 : (c > 0 ? 1 : 0), false};
    }
    const long double a = x.approx(), b = y.approx();
    Comparison c;
    c.sign = a < b ? -1 : (a > b ? 1 : 0);
    c.boundary = std::fabs(a - b) <= Order::kGuardBand * std::fmax(std::fabs(a), std::fabs(b));
    return c;
}

}  // namespace ismq
