#include "ismq/bounds.hpp"

#include "ismq/error.hpp"
#include "ismq/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <omp.h>

namespace ismq {

namespace {

// Breadth-first over nonempty words up to `depth`, lexicographic within a length.
template <class Accept>
std::optional<Word> bfs_first(unsigned alphabet, const MarkerOptions& opts, Accept accept) {
    std::deque<Word> queue;
    for (unsigned a = 1; a <= alphabet; ++a) queue.push_back(Word(alphabet, {a}));
    std::size_t visited = 0;
    while (!queue.empty()) {
        Word w = std::move(queue.front());
        queue.pop_front();
        if (++visited > opts.node_budget) return std::nullopt;
        if (accept(w)) return w;
        if (w.length() < opts.depth)
            for (unsigned a = 1; a <= alphabet; ++a) queue.push_back(w.child(a));
    }
    return std::nullopt;
}

Rational min_of(std::initializer_list<Rational> xs) {
    Rational m = *xs.begin();
    for (const auto& x : xs)
        if (x < m) m = x;
    return m;
}

Rational pair_ratio(const TestPiece& a, const TestPiece& b) {
    const Rational d = distance(a.hull, b.hull);
    return d / (a.diameter > b.diameter ? a.diameter : b.diameter);
}

struct RowResult {
    bool any = false;
    Rational min_ratio;
    std::optional<std::pair<std::size_t, std::size_t>> violation;
};

void scan_row(const std::vector<TestPiece>& pieces, const Rational& delta, std::size_t i, RowResult& acc) {
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
        const Rational q = pair_ratio(pieces[i], pieces[j]);
        if (!acc.any || q < acc.min_ratio) acc.min_ratio = q;
        acc.any = true;
        if (q < delta && !acc.violation) acc.violation = std::make_pair(i, j);
    }
}

std::size_t pair_count(std::size_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

Level max_level(const Level& a, const Level& b) { return compare(a, b).sign >= 0 ? a : b; }
Level min_level(const Level& a, const Level& b) { return compare(a, b).sign <= 0 ? a : b; }

Rational rpow(const Rational& base, const Order& r) { return pow(base, r.num()); }

}  // namespace

SeparationData find_markers(const ValidatedSystem& sys, const MarkerOptions& opts) {
    SeparationData m;
    const Interval& U = sys->open_set();
    const Interval& hC = sys.hull_C();
    const Interval& hK = sys.hull_K();

    auto tau = bfs_first(sys->N(), opts, [&](const Word& w) {
        return U.contains(image(compose(sys->outer(), w), hK));
    });
    if (!tau) throw Error("marker_not_found", "no outer word maps hull K into U within the search budget");
    m.tau0 = *tau;
    m.tau0_image = image(compose(sys->outer(), m.tau0), hK);

    bool first = true;
    for (const auto& f : sys->outer()) {
        const Rational d = distance(hC, image(f, U.closure()));
        if (first || d < m.eps0) m.eps0 = d;
        first = false;
    }
    const Rational half = m.eps0 / 2;
    m.W = Interval::open(hC.lo - half, hC.hi + half);

    auto V = intersection(hC.interior(), U);
    if (V) V = intersection(*V, m.W);
    if (!V) throw Error("marker_not_found", "int J, U and W do not overlap");
    m.V = *V;

    auto rho = bfs_first(sys->M(), opts, [&](const Word& w) {
        return m.V.contains(image(compose(sys->inner(), w), hC));
    });
    if (!rho) throw Error("marker_not_found", "no inner word maps hull C into V within the search budget");
    m.rho0 = *rho;
    m.rho0_image = image(compose(sys->inner(), m.rho0), hC);

    m.delta0 = distance_to_complement(hC, m.W);
    m.delta1 = distance_to_complement(m.tau0_image, U);
    m.delta2 = distance_to_complement(m.rho0_image, m.V);
    m.delta3 = distance_to_complement(hC, U);
    m.delta = min_of({m.delta0, m.delta1, m.delta2, m.delta3});
    return m;
}

Rational separation_constant(const ValidatedSystem& sys, const SeparationData& m) {
    return m.delta / sys.hull_K().length();
}

std::vector<TestPiece> test_family(const ValidatedSystem& sys, const PartitionBundle& b, const SeparationData& m) {
    const Interval& hC = sys.hull_C();
    const Interval& hK = sys.hull_K();
    const auto& outer_ws = sys->outer_weights();
    const auto& inner_ws = sys->inner_weights();
    std::vector<TestPiece> out;
    out.reserve(b.phi);
    for (std::size_t i = 0; i < b.psi.size(); ++i) {
        const Word st = concat(b.psi[i], m.tau0);
        const Similitude1D f = compose(sys->outer(), st);
        const Rational ps = weight(st, outer_ws);
        for (const Word& rho : b.inner[i].members) {
            const Word rr = concat(rho, m.rho0);
            const Similitude1D g = compose(sys->inner(), rr);
            TestPiece p;
            p.kind = TestPiece::Kind::cylinder;
            p.sigma = b.psi[i];
            p.rho = rho;
            p.hull = image(f, image(g, hC));
            p.mass = sys->p0() * ps * weight(rr, inner_ws);
            p.diameter = f.ratio() * g.ratio() * hC.length();
            out.push_back(std::move(p));
        }
    }
    for (const Word& sigma : b.gamma.members) {
        const Word st = concat(sigma, m.tau0);
        const Similitude1D f = compose(sys->outer(), st);
        TestPiece p;
        p.kind = TestPiece::Kind::tail;
        p.sigma = sigma;
        p.rho = Word(sys->M());
        p.hull = image(f, hK);
        p.mass = weight(st, outer_ws);
        p.diameter = f.ratio() * hK.length();
        out.push_back(std::move(p));
    }
    return out;
}

SeparationReport verify_separation_serial(const std::vector<TestPiece>& pieces, const Rational& delta) {
    RowResult acc;
    for (std::size_t i = 0; i < pieces.size(); ++i) scan_row(pieces, delta, i, acc);
    SeparationReport rep;
    rep.pairs = pair_count(pieces.size());
    rep.min_ratio = acc.any ? acc.min_ratio : Rational(0);
    rep.violation = acc.violation;
    rep.pass = !acc.violation;
    return rep;
}

SeparationReport verify_separation(const std::vector<TestPiece>& pieces, const Rational& delta) {
    const std::size_t n = pieces.size();
    const std::size_t chunks = std::min<std::size_t>(kernels::kReduceChunks, std::max<std::size_t>(n, 1));
    std::vector<RowResult> part(chunks);
    // rows are dealt round-robin so the triangular work is balanced
#pragma omp parallel for schedule(dynamic, 1)
    for (long c = 0; c < static_cast<long>(chunks); ++c)
        for (std::size_t i = static_cast<std::size_t>(c); i < n; i += chunks) scan_row(pieces, delta, i, part[c]);

    RowResult acc;
    for (auto& p : part) {
        if (!p.any) continue;
        if (!acc.any || p.min_ratio < acc.min_ratio) acc.min_ratio = p.min_ratio;
        acc.any = true;
        if (p.violation && (!acc.violation || *p.violation < *acc.violation)) acc.violation = p.violation;
    }
    SeparationReport rep;
    rep.pairs = pair_count(n);
    rep.min_ratio = acc.any ? acc.min_ratio : Rational(0);
    rep.violation = acc.violation;
    rep.pass = !acc.violation;
    return rep;
}

EnergyReport energy_bounds(const ValidatedSystem& sys, const PartitionBundle& b, const SeparationData& m,
                           const std::vector<TestPiece>& pieces) {
    const Order& r = b.r;
    const auto& ow = sys->outer_weights();
    const auto& iw = sys->inner_weights();
    const Rational p_tau = weight(m.tau0, ow), s_tau = ratio(m.tau0, ow);
    const Rational t_rho = weight(m.rho0, iw), c_rho = ratio(m.rho0, iw);

    EnergyReport rep;
    rep.H1 = Level::of(r, sys->p0() * p_tau * t_rho, s_tau * c_rho * sys.hull_C().length());
    rep.H3 = Level::of(r, p_tau, s_tau * sys.hull_K().length());
    rep.H2 = Level::of(r, iw.weights[0], iw.ratios[0]);
    for (unsigned j = 1; j < iw.alphabet_size(); ++j)
        rep.H2 = min_level(rep.H2, Level::of(r, iw.weights[j], iw.ratios[j]));
    rep.H4 = Level::of(r, ow.weights[0], ow.ratios[0]);
    for (unsigned i = 1; i < ow.alphabet_size(); ++i)
        rep.H4 = min_level(rep.H4, Level::of(r, ow.weights[i], ow.ratios[i]));
    rep.d2 = max_level(rep.H1, rep.H3);
    rep.d3 = min_level(rep.H1 * rep.H2, rep.H3 * rep.H4);
    rep.d4 = sys->p0() * p_tau * t_rho;

    const Level Tk = eta_lo(sys.system(), r).pow(b.k);
    const Level Tbar = eta_hi(sys.system(), r).pow(b.k);
    const Level lower = rep.d3 * Tk, upper = rep.d2 * Tk, weak = rep.d2 * Tbar;

    rep.total_mass = 0;
    bool first = true;
    for (const auto& p : pieces) {
        rep.total_mass += p.mass;
        const Level E = Level::of(r, p.mass, p.diameter);
        const long double e = E.approx();
        if (first || e < rep.min_energy) rep.min_energy = e;
        if (first || e > rep.max_energy) rep.max_energy = e;
        first = false;
        const Comparison lo = compare(lower, E), hi = compare(E, upper), wk = compare(E, weak);
        rep.boundary_comparisons += lo.boundary + hi.boundary + wk.boundary;
        if (lo.sign > 0) ++rep.lower_violations;
        if (hi.sign >= 0) ++rep.upper_violations;
        if (wk.sign >= 0) ++rep.weak_upper_violations;
    }
    return rep;
}

StoppingSums stopping_sums(const ValidatedSystem& sys, const PartitionBundle& b) {
    const Order& r = b.r;
    const auto& ow = sys->outer_weights();
    const auto& iw = sys->inner_weights();
    StoppingSums out;
    if (r.integral()) {
        Rational cyl = 0, tail = 0;
        for (std::size_t i = 0; i < b.psi.size(); ++i) {
            const Rational x = weight(b.psi[i], ow) * rpow(ratio(b.psi[i], ow), r);
            Rational inner = 0;
            for (const Word& rho : b.inner[i].members) inner += weight(rho, iw) * rpow(ratio(rho, iw), r);
            cyl += x * inner;
        }
        for (const Word& sigma : b.gamma.members) tail += weight(sigma, ow) * rpow(ratio(sigma, ow), r);
        out.cylinder = to_long_double(cyl);
        out.tail = to_long_double(tail);
        out.cylinder_exact = std::move(cyl);
        out.tail_exact = std::move(tail);
        return out;
    }
    const long double e = r.value();
    auto level = [&](const Word& w, const WeightSystem& ws) {
        return to_long_double(weight(w, ws)) * std::pow(to_long_double(ratio(w, ws)), e);
    };
    for (std::size_t i = 0; i < b.psi.size(); ++i) {
        const long double x = level(b.psi[i], ow);
        long double inner = 0;
        for (const Word& rho : b.inner[i].members) inner += level(rho, iw);
        out.cylinder += x * inner;
    }
    for (const Word& sigma : b.gamma.members) out.tail += level(sigma, ow);
    return out;
}

LowerSum lower_sum(const ValidatedSystem& sys, const PartitionBundle& b) {
    const StoppingSums s = stopping_sums(sys, b);
    LowerSum out;
    out.value = s.cylinder + s.tail;
    if (s.cylinder_exact) out.exact = *s.cylinder_exact + *s.tail_exact;
    return out;
}

UpperBound upper_bound(const ValidatedSystem& sys, const PartitionBundle& b) {
    const Order& r = b.r;
    const StoppingSums s = stopping_sums(sys, b);
    const Rational hC = sys.hull_C().length(), hK = sys.hull_K().length();
    UpperBound out;
    if (s.cylinder_exact) {
        const Rational v = sys->p0() * rpow(hC, r) * *s.cylinder_exact + rpow(hK, r) * *s.tail_exact;
        out.value = to_long_double(v);
        out.exact = v;
    } else {
        const long double e = r.value();
        out.value = to_long_double(sys->p0()) * std::pow(to_long_double(hC), e) * s.cylinder +
                    std::pow(to_long_double(hK), e) * s.tail;
    }

    for (std::size_t i = 0; i < b.psi.size(); ++i) {
        const Similitude1D f = compose(sys->outer(), b.psi[i]);
        for (const Word& rho : b.inner[i].members)
            out.codebook.push_back(image(f, image(compose(sys->inner(), rho), sys.hull_C())).midpoint().get_d());
    }
    for (const Word& sigma : b.gamma.members)
        out.codebook.push_back(image(compose(sys->outer(), sigma), sys.hull_K()).midpoint().get_d());
    std::sort(out.codebook.begin(), out.codebook.end());
    out.codebook.erase(std::unique(out.codebook.begin(), out.codebook.end()), out.codebook.end());
    return out;
}

}  // namespace ismq
