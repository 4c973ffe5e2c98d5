#include "ismq/partition.hpp"

#include "ismq/error.hpp"

#include <algorithm>
#include <cmath>

namespace ismq {

namespace {

std::vector<Level> letter_levels(const WeightSystem& ws, const Order& r) {
    std::vector<Level> out;
    for (unsigned i = 0; i < ws.alphabet_size(); ++i) out.push_back(Level::of(r, ws.weights[i], ws.ratios[i]));
    return out;
}

Level word_level(const std::vector<Level>& letters, const Order& r, const Word& w) {
    Level x = Level::one(r);
    for (unsigned a : w.letters()) x *= letters[a - 1];
    return x;
}

template <class Pick>
Level extreme(const CondensationSystem& sys, const Order& r, Pick better) {
    auto all = letter_levels(sys.outer_weights(), r);
    auto in = letter_levels(sys.inner_weights(), r);
    all.insert(all.end(), in.begin(), in.end());
    Level best = all.front();
    for (const auto& x : all)
        if (better(compare(x, best).sign)) best = x;
    return best;
}

struct Descent {
    std::vector<Word> leaves;
    std::size_t boundary = 0;
};

// Depth-first descent from the empty word: a node whose level (start times
// the word's own level) is >= T gets all its children; the others are leaves.
Descent descend(unsigned alphabet, const std::vector<Level>& letters, const Level& start, const Level& T,
                std::size_t budget) {
    Descent out;
    struct Node {
        Word w;
        Level x;
    };
    std::vector<Node> stack;
    stack.push_back({Word(alphabet), start});
    std::size_t visited = 0;
    while (!stack.empty()) {
        Node node = std::move(stack.back());
        stack.pop_back();
        if (++visited > budget)
            throw Error("budget_exceeded", "stopping-time descent visited more than " + std::to_string(budget) +
                                               " words");
        const Comparison c = compare(node.x, T);
        if (c.boundary) ++out.boundary;
        if (c.sign >= 0) {
            for (unsigned a = alphabet; a >= 1; --a) stack.push_back({node.w.child(a), node.x * letters[a - 1]});
        } else {
            out.leaves.push_back(std::move(node.w));
        }
    }
    return out;
}

void check_k(unsigned k) {
    if (k < 1) throw Error("bad_k", "k must be at least 1");
}

Antichain as_antichain(unsigned alphabet, std::vector<Word> members) {
    Antichain a;
    a.alphabet_size = alphabet;
    a.members = std::move(members);
    a.maximal = check_maximal_antichain(a.members, alphabet).maximal();
    if (!a.maximal) throw Error("internal", "stopping-time descent produced a non-maximal antichain");
    return a;
}

long double log_level(const std::vector<long double>& letter_logs, const Word& w) {
    long double s = 0;
    for (unsigned a : w.letters()) s += letter_logs[a - 1];
    return s;
}

std::vector<long double> letter_logs(const WeightSystem& ws, double r) {
    std::vector<long double> out;
    for (unsigned i = 0; i < ws.alphabet_size(); ++i)
        out.push_back(std::log(to_long_double(ws.weights[i])) + r * std::log(to_long_double(ws.ratios[i])));
    return out;
}

}  // namespace

Level outer_level(const CondensationSystem& sys, const Order& r, const Word& sigma) {
    return word_level(letter_levels(sys.outer_weights(), r), r, sigma);
}

Level inner_level(const CondensationSystem& sys, const Order& r, const Word& rho) {
    return word_level(letter_levels(sys.inner_weights(), r), r, rho);
}

Level eta_lo(const CondensationSystem& sys, const Order& r) {
    return extreme(sys, r, [](int s) { return s < 0; });
}

Level eta_hi(const CondensationSystem& sys, const Order& r) {
    return extreme(sys, r, [](int s) { return s > 0; });
}

Level threshold(const CondensationSystem& sys, const Order& r, unsigned k) {
    check_k(k);
    return eta_lo(sys, r).pow(k);
}

Antichain build_gamma(const CondensationSystem& sys, const Order& r, unsigned k, const PartitionOptions& opts) {
    const Level T = threshold(sys, r, k);
    auto d = descend(sys.N(), letter_levels(sys.outer_weights(), r), Level::one(r), T, opts.node_budget);
    return as_antichain(sys.N(), std::move(d.leaves));
}

PsiResult build_psi(const Antichain& gamma) {
    const std::size_t l1 = gamma.min_length();
    PsiResult out;
    std::vector<Word> interior = strict_prefixes(gamma.members);
    std::stable_sort(interior.begin(), interior.end(),
                     [](const Word& a, const Word& b) { return a.length() < b.length(); });
    for (auto& w : interior) {
        if (w.length() >= l1) out.lambda_star.push_back(w);
        out.psi.push_back(std::move(w));
    }
    return out;
}

Antichain build_inner(const CondensationSystem& sys, const Order& r, unsigned k, const Word& sigma,
                      const PartitionOptions& opts) {
    const Level T = threshold(sys, r, k);
    const auto outer = letter_levels(sys.outer_weights(), r);
    Level x = Level::one(r);
    for (std::size_t n = 0;; ++n) {
        if (compare(x, T).sign < 0)
            throw Error("not_in_psi", sigma.str() + " is not an interior node of the stopping-time antichain");
        if (n == sigma.length()) break;
        x *= outer[sigma[n] - 1];
    }
    auto d = descend(sys.M(), letter_levels(sys.inner_weights(), r), x, T, opts.node_budget);
    return as_antichain(sys.M(), std::move(d.leaves));
}

PartitionBundle build_partition(const CondensationSystem& sys, const Order& r, unsigned k,
                                const PartitionOptions& opts) {
    const Level T = threshold(sys, r, k);
    const auto outer = letter_levels(sys.outer_weights(), r);
    const auto inner = letter_levels(sys.inner_weights(), r);

    PartitionBundle b;
    b.k = k;
    b.r = r;
    auto g = descend(sys.N(), outer, Level::one(r), T, opts.node_budget);
    b.boundary_comparisons += g.boundary;
    b.gamma = as_antichain(sys.N(), std::move(g.leaves));
    b.N_kr = b.gamma.members.size();
    b.l1 = b.gamma.min_length();
    b.l2 = b.gamma.max_length();

    auto psi = build_psi(b.gamma);
    b.psi = std::move(psi.psi);
    b.lambda_star = std::move(psi.lambda_star);
    b.phi = b.N_kr;
    for (const Word& sigma : b.psi) {
        auto d = descend(sys.M(), inner, word_level(outer, r, sigma), T, opts.node_budget);
        b.boundary_comparisons += d.boundary;
        b.inner.push_back(as_antichain(sys.M(), std::move(d.leaves)));
        b.M_kr.push_back(b.inner.back().members.size());
        b.phi += b.M_kr.back();
    }
    return b;
}

long double I_k(const CondensationSystem& sys, const PartitionBundle& b, double s) {
    if (!(s > 0)) throw Error("bad_argument", "I_k needs s > 0");
    const double r = b.r.value();
    const long double e = static_cast<long double>(s) / (static_cast<long double>(s) + r);
    const auto outer = letter_logs(sys.outer_weights(), r);
    const auto inner = letter_logs(sys.inner_weights(), r);
    long double total = 0;
    for (std::size_t i = 0; i < b.psi.size(); ++i) {
        const long double ls = log_level(outer, b.psi[i]);
        for (const Word& rho : b.inner[i].members) total += std::exp(e * (ls + log_level(inner, rho)));
    }
    for (const Word& sigma : b.gamma.members) total += std::exp(e * log_level(outer, sigma));
    return total;
}

GrowthConstants growth_constants(const CondensationSystem& sys, const Order& r) {
    GrowthConstants g;
    g.eta_lo = eta_lo(sys, r);
    g.eta_hi = eta_hi(sys, r);
    Level x = g.eta_hi;
    g.H = 1;
    while (compare(x, g.eta_lo).sign >= 0) {
        x *= g.eta_hi;
        if (++g.H > 100000) throw Error("internal", "H search did not terminate");
    }
    const BigInt M = sys.M(), N = sys.N();
    BigInt term = 1;
    g.D = 0;
    for (unsigned i = 1; i <= g.H; ++i) {
        term *= M;
        g.D += term;
    }
    BigInt NH;
    mpz_pow_ui(NH.get_mpz_t(), N.get_mpz_t(), g.H);
    g.d1 = g.D * (term > NH ? term : NH) + 1;
    return g;
}

}  // namespace ismq
