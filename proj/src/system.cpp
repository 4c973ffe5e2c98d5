#include "ismq/system.hpp"

#include "ismq/error.hpp"

#include <algorithm>
#include <deque>

namespace ismq {

Similitude1D::Similitude1D(Rational scale, Rational offset)
    : scale_(std::move(scale)), offset_(std::move(offset)) {
    if (scale_ == 0 || abs(scale_) >= 1)
        throw Error("not_contractive", "similitude scale must satisfy 0 < |scale| < 1, got " +
                                           to_string(scale_));
}

Similitude1D Similitude1D::identity() { return Similitude1D(1, 0, Unchecked{}); }

Similitude1D compose(const Similitude1D& outer, const Similitude1D& inner) {
    return Similitude1D(outer.scale_ * inner.scale_, outer.scale_ * inner.offset_ + outer.offset_,
                        Similitude1D::Unchecked{});
}

Similitude1D compose(std::span<const Similitude1D> maps, const Word& w) {
    if (w.alphabet_size() != maps.size())
        throw Error("alphabet_mismatch", "word alphabet does not match the map family");
    Similitude1D out = Similitude1D::identity();
    for (unsigned a : w.letters()) out = compose(out, maps[a - 1]);
    return out;
}

Rational apply_word(std::span<const Similitude1D> maps, const Word& w, const Rational& x) {
    return compose(maps, w)(x);
}

Interval::Interval(Rational lo_, Rational hi_, bool lo_open_, bool hi_open_)
    : lo(std::move(lo_)), hi(std::move(hi_)), lo_open(lo_open_), hi_open(hi_open_) {
    if (!(lo < hi))
        throw Error("degenerate_interval",
                    "interval needs lo < hi, got [" + to_string(lo) + ", " + to_string(hi) + "]");
}

bool Interval::contains(const Rational& x) const {
    const bool above = lo_open ? x > lo : x >= lo;
    const bool below = hi_open ? x < hi : x <= hi;
    return above && below;
}

bool Interval::contains(const Interval& o) const {
    const bool left = o.lo > lo || (o.lo == lo && (!lo_open || o.lo_open));
    const bool right = o.hi < hi || (o.hi == hi && (!hi_open || o.hi_open));
    return left && right;
}

bool Interval::intersects(const Interval& o) const {
    if (hi < o.lo || o.hi < lo) return false;
    if (hi == o.lo) return !hi_open && !o.lo_open;
    if (o.hi == lo) return !o.hi_open && !lo_open;
    return true;
}

std::string Interval::str() const {
    return std::string(lo_open ? "(" : "[") + to_string(lo) + ", " + to_string(hi) + (hi_open ? ")" : "]");
}

Interval image(const Similitude1D& f, const Interval& I) {
    if (f.scale() > 0) return Interval(f(I.lo), f(I.hi), I.lo_open, I.hi_open);
    return Interval(f(I.hi), f(I.lo), I.hi_open, I.lo_open);
}

Interval hull(const Interval& a, const Interval& b) {
    Interval out = a;
    if (b.lo < a.lo) {
        out.lo = b.lo;
        out.lo_open = b.lo_open;
    } else if (b.lo == a.lo) {
        out.lo_open = a.lo_open && b.lo_open;
    }
    if (b.hi > a.hi) {
        out.hi = b.hi;
        out.hi_open = b.hi_open;
    } else if (b.hi == a.hi) {
        out.hi_open = a.hi_open && b.hi_open;
    }
    return out;
}

std::optional<Interval> intersection(const Interval& a, const Interval& b) {
    if (!a.intersects(b)) return std::nullopt;
    Rational lo = std::max(a.lo, b.lo);
    Rational hi = std::min(a.hi, b.hi);
    if (!(lo < hi)) return std::nullopt;  // single shared endpoint
    const bool lo_open = (a.lo == lo && a.lo_open) || (b.lo == lo && b.lo_open);
    const bool hi_open = (a.hi == hi && a.hi_open) || (b.hi == hi && b.hi_open);
    return Interval(lo, hi, lo_open, hi_open);
}

Rational distance(const Interval& a, const Interval& b) {
    if (b.lo > a.hi) return b.lo - a.hi;
    if (a.lo > b.hi) return a.lo - b.hi;
    return 0;
}

Rational distance_to_complement(const Interval& I, const Interval& U) {
    if (!U.contains(I)) return 0;
    return std::min(I.lo - U.lo, U.hi - I.hi);
}

namespace {

struct Row {
    Rational ca, cb, rhs;  // ca * a + cb * b = rhs
};

// Equation for the left endpoint when choice picks map i (or the seed).
Row left_row(const std::vector<Similitude1D>& maps, int choice, const std::optional<Interval>& seed) {
    if (choice < 0) return {1, 0, seed->lo};
    const auto& f = maps[static_cast<std::size_t>(choice)];
    if (f.scale() > 0) return {1 - f.scale(), 0, f.offset()};
    return {1, -f.scale(), f.offset()};
}

Row right_row(const std::vector<Similitude1D>& maps, int choice, const std::optional<Interval>& seed) {
    if (choice < 0) return {0, 1, seed->hi};
    const auto& f = maps[static_cast<std::size_t>(choice)];
    if (f.scale() > 0) return {0, 1 - f.scale(), f.offset()};
    return {-f.scale(), 1, f.offset()};
}

}  // namespace

Interval invariant_hull(std::span<const Similitude1D> maps_span, const std::optional<Interval>& seed) {
    if (maps_span.empty()) throw Error("empty_ifs", "an IFS needs at least one map");
    const std::vector<Similitude1D> maps(maps_span.begin(), maps_span.end());
    const int first = seed ? -1 : 0;
    const int n = static_cast<int>(maps.size());

    for (int ca = first; ca < n; ++ca) {
        for (int cb = first; cb < n; ++cb) {
            const Row r1 = left_row(maps, ca, seed);
            const Row r2 = right_row(maps, cb, seed);
            const Rational det = r1.ca * r2.cb - r1.cb * r2.ca;
            if (det == 0) continue;
            const Rational a = (r1.rhs * r2.cb - r1.cb * r2.rhs) / det;
            const Rational b = (r1.ca * r2.rhs - r1.rhs * r2.ca) / det;
            if (b < a) continue;
            Rational lo = seed ? seed->lo : Rational(0);
            Rational hi = seed ? seed->hi : Rational(0);
            bool init = seed.has_value();
            for (const auto& f : maps) {
                Rational x = f(a), y = f(b);
                if (y < x) std::swap(x, y);
                if (!init || x < lo) lo = x;
                if (!init || y > hi) hi = y;
                init = true;
            }
            if (lo != a || hi != b) continue;
            if (a == b)
                throw Error("degenerate_hull", "attractor is the single point " + to_string(a));
            return Interval::closed(a, b);
        }
    }
    throw Error("hull_not_found", "no consistent hull endpoints (internal error)");
}

CondensationSystem::CondensationSystem(std::vector<Similitude1D> outer, std::vector<Rational> outer_probs,
                                       std::vector<Similitude1D> inner, std::vector<Rational> inner_probs,
                                       Interval open_set)
    : outer_(std::move(outer)),
      outer_probs_(std::move(outer_probs)),
      inner_(std::move(inner)),
      inner_probs_(std::move(inner_probs)),
      open_set_(std::move(open_set)) {
    if (outer_.empty() || inner_.empty())
        throw Error("bad_system", "need at least one outer and one inner map");
    if (outer_probs_.size() != outer_.size() + 1)
        throw Error("bad_system", "outer_probs must list p_0 followed by one probability per outer map");
    if (inner_probs_.size() != inner_.size())
        throw Error("bad_system", "inner_probs must list one probability per inner map");
    Rational total = 0;
    for (const auto& p : outer_probs_) {
        if (p <= 0) throw Error("bad_system", "every p_i must be positive");
        total += p;
    }
    if (total != 1) throw Error("bad_system", "p_0 + ... + p_N must equal 1, got " + to_string(total));
    total = 0;
    for (const auto& t : inner_probs_) {
        if (t <= 0) throw Error("bad_system", "every t_j must be positive");
        total += t;
    }
    if (total != 1) throw Error("bad_system", "t_1 + ... + t_M must equal 1, got " + to_string(total));
    if (!open_set_.lo_open || !open_set_.hi_open)
        throw Error("bad_system", "the IOSC set U must be an open interval");

    std::vector<Rational> s, c;
    for (const auto& f : outer_) s.push_back(f.ratio());
    for (const auto& g : inner_) c.push_back(g.ratio());
    outer_ws_ = WeightSystem(std::vector<Rational>(outer_probs_.begin() + 1, outer_probs_.end()), s);
    inner_ws_ = WeightSystem(inner_probs_, c);
}

CondensationSystem CondensationSystem::with_open_set(Interval U) const {
    return CondensationSystem(outer_, outer_probs_, inner_, inner_probs_, std::move(U));
}

const char* to_string(Verdict::Status s) {
    switch (s) {
        case Verdict::Status::pass: return "pass";
        case Verdict::Status::fail: return "fail";
        case Verdict::Status::inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

Verdict pass(std::string name, std::string note = {}) {
    return {std::move(name), Verdict::Status::pass, std::move(note)};
}
Verdict fail(std::string name, std::string witness) {
    return {std::move(name), Verdict::Status::fail, std::move(witness)};
}

std::string fi(unsigned i) { return "f_" + std::to_string(i + 1); }

// Shortest outer word w (BFS, lexicographic ties) with f_w(hull_E) inside U.
// Subtrees whose image misses U are pruned.
std::optional<Word> find_a3_certificate(const CondensationSystem& sys, const Interval& hull_E,
                                        const IoscOptions& opts, bool& budget_hit) {
    const Interval& U = sys.open_set();
    std::deque<std::pair<Word, Similitude1D>> queue;
    queue.emplace_back(Word(sys.N()), Similitude1D::identity());
    std::size_t nodes = 0;
    budget_hit = false;
    while (!queue.empty()) {
        auto [w, f] = std::move(queue.front());
        queue.pop_front();
        const Interval img = image(f, hull_E);
        if (U.contains(img)) return w;
        if (!U.intersects(img) || w.length() >= opts.a3_depth) continue;
        for (unsigned a = 1; a <= sys.N(); ++a) {
            if (++nodes > opts.a3_node_budget) {
                budget_hit = true;
                return std::nullopt;
            }
            queue.emplace_back(w.child(a), compose(f, sys.outer()[a - 1]));
        }
    }
    return std::nullopt;
}

}  // namespace

IoscReport check_iosc(const CondensationSystem& sys, const IoscOptions& opts) {
    IoscReport rep;
    const Interval& U = sys.open_set();
    const Interval clU = U.closure();
    rep.hull_C = invariant_hull(sys.inner());
    rep.hull_K = invariant_hull(sys.outer(), rep.hull_C);
    try {
        rep.hull_E = invariant_hull(sys.outer());
    } catch (const Error& e) {
        if (e.code() != "degenerate_hull") throw;
        const Similitude1D& f = sys.outer().front();
        rep.E_point = f.offset() / (1 - f.scale());
        rep.hull_E = rep.hull_K;
    }
    const Interval& C = rep.hull_C;

    std::vector<Interval> fU;
    for (const auto& f : sys.outer()) fU.push_back(image(f, U));

    rep.a1 = pass("A1");
    for (unsigned i = 0; i < sys.N(); ++i)
        if (!U.contains(fU[i])) {
            rep.a1 = fail("A1", fi(i) + "(U) = " + fU[i].str() + " is not contained in U = " + U.str());
            break;
        }

    rep.a2 = pass("A2");
    for (unsigned i = 0; i < sys.N() && rep.a2.passed(); ++i)
        for (unsigned j = i + 1; j < sys.N(); ++j)
            if (fU[i].intersects(fU[j])) {
                rep.a2 = fail("A2", fi(i) + "(U) = " + fU[i].str() + " meets " + fi(j) + "(U) = " + fU[j].str());
                break;
            }

    if (!U.contains(C)) {
        rep.a3 = fail("A3", "hull(C) = " + C.str() + " is not contained in U = " + U.str());
    } else if (rep.E_point) {
        if (U.contains(*rep.E_point))
            rep.a3 = pass("A3", "E = {" + to_string(*rep.E_point) + "} lies in U");
        else
            rep.a3 = fail("A3", "E = {" + to_string(*rep.E_point) + "} misses U = " + U.str());
    } else if (!U.intersects(rep.hull_E)) {
        rep.a3 = fail("A3", "hull(E) = " + rep.hull_E.str() + " misses U = " + U.str());
    } else {
        bool budget_hit = false;
        rep.a3_certificate = find_a3_certificate(sys, rep.hull_E, opts, budget_hit);
        if (rep.a3_certificate) {
            rep.a3 = pass("A3", "f_" + rep.a3_certificate->str() + "(hull E) lies in U");
        } else {
            rep.a3 = {"A3", Verdict::Status::inconclusive,
                      std::string("no cylinder f_w(hull E) inside U found up to depth ") +
                          std::to_string(opts.a3_depth) + (budget_hit ? " (node budget hit)" : "")};
        }
    }

    rep.a4 = pass("A4");
    if (C.contains(U.lo) || C.contains(U.hi)) {
        // sufficient condition for nu(boundary U) = 0 is violated; reject
        rep.a4 = fail("A4", "boundary of U meets hull(C) = " + C.str() +
                                "; nu(bd U) = 0 cannot be certified");
    } else {
        for (unsigned i = 0; i < sys.N(); ++i) {
            const Interval img = image(sys.outer()[i], clU);
            if (img.intersects(C)) {
                rep.a4 = fail("A4", "hull(C) = " + C.str() + " meets " + fi(i) + "(cl U) = " + img.str());
                break;
            }
        }
    }

    rep.inner_osc = pass("inner_OSC", "J = " + C.str());
    const Interval intJ = C.interior();
    std::vector<Interval> gJ;
    for (unsigned j = 0; j < sys.M() && rep.inner_osc.passed(); ++j) {
        const Interval img = image(sys.inner()[j], C);
        if (!C.contains(img))
            rep.inner_osc = fail("inner_OSC", "g_" + std::to_string(j + 1) + "(J) = " + img.str() + " leaves J");
        gJ.push_back(image(sys.inner()[j], intJ));
    }
    for (unsigned i = 0; i < gJ.size() && rep.inner_osc.passed(); ++i)
        for (unsigned j = i + 1; j < gJ.size(); ++j)
            if (gJ[i].intersects(gJ[j])) {
                rep.inner_osc = fail("inner_OSC", "g_" + std::to_string(i + 1) + "(int J) = " + gJ[i].str() +
                                                      " meets g_" + std::to_string(j + 1) + "(int J) = " +
                                                      gJ[j].str());
                break;
            }
    return rep;
}

ValidatedSystem ValidatedSystem::validate(CondensationSystem sys, const IoscOptions& opts) {
    IoscReport rep = check_iosc(sys, opts);
    if (!rep.accepted()) {
        std::string msg = "IOSC rejected:";
        for (const Verdict* v : rep.verdicts())
            if (!v->passed()) msg += " [" + v->condition + " " + to_string(v->status) + ": " + v->witness + "]";
        throw Error("iosc_rejected", msg);
    }
    return ValidatedSystem(std::move(sys), std::move(rep));
}

}  // namespace ismq
