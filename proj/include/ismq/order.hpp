#pragma once

#include "ismq/rational.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace ismq {

// The order r > 0. When r = num/den with den <= kMaxExactDenominator every
// quantity of the form a * b^r (a, b > 0 rational) is compared exactly via
// its den-th power a^den * b^num. Otherwise comparisons fall back to long
// double with a relative guard band.
class Order {
public:
    static constexpr unsigned long kMaxExactDenominator = 64;
    static constexpr long double kGuardBand = 1e-15L;

    explicit Order(double r);
    explicit Order(const Rational& r);

    // Integer, decimal ("0.5") or fraction ("3/2") literal; decimals are read
    // exactly and kept exact when their reduced denominator is small.
    static Order parse(std::string_view text);

    double value() const noexcept { return value_; }
    bool exact() const noexcept { return exact_.has_value(); }
    const std::optional<Rational>& rational() const noexcept { return exact_; }
    bool integral() const noexcept { return exact_ && exact_->get_den() == 1; }
    unsigned long num() const { return exact_->get_num().get_ui(); }
    unsigned long den() const { return exact_->get_den().get_ui(); }

    std::string str() const;

private:
    double value_ = 0;
    std::optional<Rational> exact_;
};

// A positive quantity X that is a product of factors a * b^r. `power` holds
// X^den when the order is exact; `approx` always holds X.
class Level {
public:
    Level() = default;

    static Level one(const Order& r);
    // a * b^r
    static Level of(const Order& r, const Rational& a, const Rational& b);

    Level& operator*=(const Level& o);
    friend Level operator*(Level a, const Level& b) { return a *= b; }
    Level pow(unsigned long n) const;

    bool exact() const noexcept { return exact_; }
    const Rational& power() const noexcept { return power_; }
    long double approx() const noexcept { return approx_; }

private:
    bool exact_ = false;
    Rational power_ = 1;
    long double approx_ = 1;
};

struct Comparison {
    int sign = 0;           // sign of (x - y)
    bool boundary = false;  // inexact and within the guard band
};

Comparison compare(const Level& x, const Level& y);

}  // namespace ismq
