#pragma once

#include "ismq/rational.hpp"
#include "ismq/words.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ismq {

// x -> scale * x + offset with 0 < |scale| < 1; a negative scale reflects.
class Similitude1D {
public:
    Similitude1D(Rational scale, Rational offset);

    static Similitude1D identity();

    const Rational& scale() const noexcept { return scale_; }
    const Rational& offset() const noexcept { return offset_; }
    Rational ratio() const { return abs(scale_); }

    Rational operator()(const Rational& x) const { return scale_ * x + offset_; }

    friend bool operator==(const Similitude1D&, const Similitude1D&) = default;

private:
    struct Unchecked {};
    Similitude1D(Rational scale, Rational offset, Unchecked)
        : scale_(std::move(scale)), offset_(std::move(offset)) {}
    friend Similitude1D compose(const Similitude1D&, const Similitude1D&);

    Rational scale_;
    Rational offset_;
};

// outer o inner
Similitude1D compose(const Similitude1D& outer, const Similitude1D& inner);

// f_w = f_{w_1} o ... o f_{w_n}; the empty word gives the identity.
Similitude1D compose(std::span<const Similitude1D> maps, const Word& w);
Rational apply_word(std::span<const Similitude1D> maps, const Word& w, const Rational& x);

struct Interval {
    Rational lo;
    Rational hi;
    bool lo_open = false;
    bool hi_open = false;

    Interval(Rational lo, Rational hi, bool lo_open = false, bool hi_open = false);

    static Interval closed(Rational lo, Rational hi) { return Interval(std::move(lo), std::move(hi)); }
    static Interval open(Rational lo, Rational hi) {
        return Interval(std::move(lo), std::move(hi), true, true);
    }

    Rational length() const { return hi - lo; }
    Rational midpoint() const { return (lo + hi) / 2; }
    Interval closure() const { return closed(lo, hi); }
    Interval interior() const { return open(lo, hi); }

    bool contains(const Rational& x) const;
    // other is a subset of *this
    bool contains(const Interval& other) const;
    bool intersects(const Interval& other) const;

    std::string str() const;

    friend bool operator==(const Interval&, const Interval&) = default;
};

Interval image(const Similitude1D& f, const Interval& I);
Interval hull(const Interval& a, const Interval& b);
std::optional<Interval> intersection(const Interval& a, const Interval& b);

// inf distance between the two sets (0 when they touch or overlap)
Rational distance(const Interval& a, const Interval& b);

// d(I, R \ U) for an open interval U; 0 unless I lies inside U
Rational distance_to_complement(const Interval& I, const Interval& U);

// Smallest closed interval I with hull(seed, f_1(I), ..., f_N(I)) = I. The
// endpoints solve linear fixed-point equations and are found exactly.
// Throws when the result is a single point.
Interval invariant_hull(std::span<const Similitude1D> maps, const std::optional<Interval>& seed = {});

inline Interval attractor_hull(std::span<const Similitude1D> maps) { return invariant_hull(maps); }

class CondensationSystem {
public:
    CondensationSystem(std::vector<Similitude1D> outer, std::vector<Rational> outer_probs,
                       std::vector<Similitude1D> inner, std::vector<Rational> inner_probs,
                       Interval open_set);

    const std::vector<Similitude1D>& outer() const noexcept { return outer_; }
    const std::vector<Similitude1D>& inner() const noexcept { return inner_; }
    // p_0, p_1, ..., p_N
    const std::vector<Rational>& outer_probs() const noexcept { return outer_probs_; }
    const std::vector<Rational>& inner_probs() const noexcept { return inner_probs_; }
    const Interval& open_set() const noexcept { return open_set_; }

    unsigned N() const noexcept { return static_cast<unsigned>(outer_.size()); }
    unsigned M() const noexcept { return static_cast<unsigned>(inner_.size()); }
    const Rational& p0() const { return outer_probs_.front(); }

    // (p_1..p_N, s_1..s_N) and (t_1..t_M, c_1..c_M)
    const WeightSystem& outer_weights() const noexcept { return outer_ws_; }
    const WeightSystem& inner_weights() const noexcept { return inner_ws_; }

    CondensationSystem with_open_set(Interval U) const;

private:
    std::vector<Similitude1D> outer_;
    std::vector<Rational> outer_probs_;
    std::vector<Similitude1D> inner_;
    std::vector<Rational> inner_probs_;
    Interval open_set_;
    WeightSystem outer_ws_;
    WeightSystem inner_ws_;
};

struct Verdict {
    enum class Status { pass, fail, inconclusive };

    std::string condition;
    Status status = Status::fail;
    std::string witness;

    bool passed() const noexcept { return status == Status::pass; }
};

const char* to_string(Verdict::Status s);

struct IoscOptions {
    unsigned a3_depth = 12;
    std::size_t a3_node_budget = 1'000'000;
};

struct IoscReport {
    Verdict a1, a2, a3, a4, inner_osc;
    Interval hull_C = Interval::closed(0, 1);
    Interval hull_E = Interval::closed(0, 1);  // equals hull_K when E is a single point
    std::optional<Rational> E_point;             // set when all outer maps share one fixed point
    Interval hull_K = Interval::closed(0, 1);
    std::optional<Word> a3_certificate;

    bool accepted() const noexcept {
        return a1.passed() && a2.passed() && a3.passed() && a4.passed() && inner_osc.passed();
    }
    std::vector<const Verdict*> verdicts() const { return {&a1, &a2, &a3, &a4, &inner_osc}; }
};

IoscReport check_iosc(const CondensationSystem& sys, const IoscOptions& opts = {});

// A system whose IOSC report passed. Operations that rely on the mass
// formulas take this type rather than a bare CondensationSystem.
class ValidatedSystem {
public:
    static ValidatedSystem validate(CondensationSystem sys, const IoscOptions& opts = {});

    const CondensationSystem& system() const noexcept { return sys_; }
    const IoscReport& report() const noexcept { return report_; }
    const Interval& hull_C() const noexcept { return report_.hull_C; }
    const Interval& hull_K() const noexcept { return report_.hull_K; }
    const Interval& hull_E() const noexcept { return report_.hull_E; }

    const CondensationSystem* operator->() const noexcept { return &sys_; }

private:
    ValidatedSystem(CondensationSystem sys, IoscReport report)
        : sys_(std::move(sys)), report_(std::move(report)) {}

    CondensationSystem sys_;
    IoscReport report_;
};

}  // namespace ismq
