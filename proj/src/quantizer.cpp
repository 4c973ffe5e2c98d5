#include "ismq/quantizer.hpp"

#include "ismq/bounds.hpp"
#include "ismq/dims.hpp"
#include "ismq/error.hpp"
#include "ismq/measure.hpp"
#include "ismq/partition.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

namespace ismq {

namespace {

void check_order(double r) {
    if (!(r >= 1)) throw Error("bad_order", "the estimator needs r >= 1");
}

double stddev(const std::vector<double>& v) {
    if (v.size() < 2) return 0;
    double m = 0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    double s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

double mean_cost(std::span<const double> samples, std::span<const double> points, double r) {
    return kernels::omp::distortion_sum(samples, points, r) / static_cast<double>(samples.size());
}

std::vector<std::size_t> cell_starts(std::span<const double> sorted, std::span<const double> points) {
    const std::size_t n = points.size();
    std::vector<std::size_t> begin(n + 1);
    begin[0] = 0;
    for (std::size_t i = 1; i < n; ++i) {
        const double mid = 0.5 * (points[i - 1] + points[i]);
        begin[i] = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), mid) - sorted.begin());
    }
    begin[n] = sorted.size();
    return begin;
}

std::vector<double> distinct_values(std::span<const double> sorted) {
    std::vector<double> u(sorted.begin(), sorted.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    return u;
}

std::vector<double> quantile_init(const std::vector<double>& uniq, std::size_t n) {
    std::vector<double> pts(n);
    const double u = static_cast<double>(uniq.size());
    for (std::size_t i = 0; i < n; ++i)
        pts[i] = uniq[static_cast<std::size_t>((static_cast<double>(i) + 0.5) * u / static_cast<double>(n))];
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

struct SplitCell {
    std::size_t begin = 0, end = 0;
    std::size_t cut = 0;     // best split position, 0 when the cell cannot be split
    long double gain = 0;    // squared-error reduction of that split
};

// Best two-way split of sorted[b, e) by squared error, scanned with sums
// shifted to the cell's first value.
SplitCell best_split(std::span<const double> sorted, std::size_t b, std::size_t e) {
    SplitCell c{b, e, 0, 0};
    const long double x0 = sorted[b];
    long double tot = 0, tot2 = 0;
    for (std::size_t i = b; i < e; ++i) {
        const long double y = sorted[i] - x0;
        tot += y;
        tot2 += y * y;
    }
    const long double m = static_cast<long double>(e - b);
    const long double sse = tot2 - tot * tot / m;
    long double left = 0, left2 = 0;
    for (std::size_t j = b + 1; j < e; ++j) {
        const long double y = sorted[j - 1] - x0;
        left += y;
        left2 += y * y;
        if (!(sorted[j - 1] < sorted[j])) continue;
        const long double ml = static_cast<long double>(j - b), mr = m - ml;
        const long double right = tot - left, right2 = tot2 - left2;
        const long double split = (left2 - left * left / ml) + (right2 - right * right / mr);
        const long double gain = sse - split;
        if (c.cut == 0 || gain > c.gain) {
            c.cut = j;
            c.gain = gain;
        }
    }
    return c;
}

// Greedy divisive initialisation: start from one cell and repeatedly split
// the cell whose best split gains the most, then place each point at its
// cell's centroid.
std::vector<double> split_init(std::span<const double> sorted, std::size_t n, double r) {
    auto worse = [](const SplitCell& a, const SplitCell& b) {
        if (a.gain != b.gain) return a.gain < b.gain;
        return a.begin > b.begin;
    };
    std::vector<SplitCell> heap{best_split(sorted, 0, sorted.size())};
    std::vector<SplitCell> done;
    while (heap.size() + done.size() < n && !heap.empty()) {
        std::pop_heap(heap.begin(), heap.end(), worse);
        const SplitCell c = heap.back();
        heap.pop_back();
        if (c.cut == 0) {
            done.push_back(c);
            continue;
        }
        for (const SplitCell& part : {best_split(sorted, c.begin, c.cut), best_split(sorted, c.cut, c.end)}) {
            heap.push_back(part);
            std::push_heap(heap.begin(), heap.end(), worse);
        }
    }
    heap.insert(heap.end(), done.begin(), done.end());
    std::vector<double> pts;
    for (const auto& c : heap) pts.push_back(kernels::cell_centroid(sorted.subspan(c.begin, c.end - c.begin), r));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

// Sum tree over nonnegative weights with weighted index sampling.
class Fenwick {
public:
    explicit Fenwick(std::span<const double> w) : tree_(w.size() + 1, 0.0) {
        for (std::size_t i = 0; i < w.size(); ++i) add(i, w[i]);
    }
    void add(std::size_t i, double delta) {
        for (++i; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
    }
    double total() const {
        double s = 0;
        for (std::size_t i = tree_.size() - 1; i > 0; i -= i & (~i + 1)) s += tree_[i];
        return s;
    }
    // smallest index whose prefix sum exceeds u
    std::size_t find(double u) const {
        std::size_t pos = 0, step = std::bit_floor(tree_.size() - 1);
        for (; step > 0; step >>= 1)
            if (pos + step < tree_.size() && tree_[pos + step] <= u) {
                pos += step;
                u -= tree_[pos];
            }
        return std::min(pos, tree_.size() - 2);
    }

private:
    std::vector<double> tree_;
};

// D^r seeding: the first point uniformly among the samples, each further one
// with probability proportional to its current cost. In 1-D a new point only
// changes the costs between its two neighbours.
std::vector<double> seeded_init(std::span<const double> sorted, std::size_t n, double r, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> pts{sorted[std::uniform_int_distribution<std::size_t>(0, sorted.size() - 1)(rng)]};
    std::vector<double> cost(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) cost[i] = kernels::power_cost(std::fabs(sorted[i] - pts[0]), r);
    Fenwick tree(cost);
    for (std::size_t tries = 0; pts.size() < n && tries < 64 * n; ++tries) {
        const double a = sorted[tree.find(unif(rng) * tree.total())];
        const auto at = std::lower_bound(pts.begin(), pts.end(), a);
        if (at != pts.end() && *at == a) continue;
        const double lo = at == pts.begin() ? -INFINITY : *(at - 1);
        const double hi = at == pts.end() ? INFINITY : *at;
        pts.insert(at, a);
        const auto b = std::upper_bound(sorted.begin(), sorted.end(), lo) - sorted.begin();
        const auto e = std::lower_bound(sorted.begin(), sorted.end(), hi) - sorted.begin();
        for (auto i = b; i < e; ++i) {
            const double c = kernels::power_cost(std::fabs(sorted[i] - a), r);
            if (c < cost[i]) {
                tree.add(i, c - cost[i]);
                cost[i] = c;
            }
        }
    }
    return pts;
}

}  // namespace

Codebook::Codebook(std::vector<double> points) : points_(std::move(points)) {
    if (points_.empty()) throw Error("empty_codebook", "a codebook needs at least one point");
    for (double x : points_)
        if (!std::isfinite(x)) throw Error("bad_codebook", "code points must be finite");
    for (std::size_t i = 1; i < points_.size(); ++i)
        if (!(points_[i - 1] < points_[i])) throw Error("bad_codebook", "code points must be strictly increasing");
}

ErrorEstimate eval_codebook(std::span<const double> samples, const Codebook& alpha, double r, std::uint64_t seed,
                            std::size_t bootstrap) {
    check_order(r);
    if (samples.empty()) throw Error("no_samples", "eval_codebook needs samples");
    std::vector<double> costs(samples.size());
    kernels::omp::costs(samples, alpha.points(), r, costs);
    ErrorEstimate e;
    e.n = alpha.n();
    e.r = r;
    e.samples = samples.size();
    e.seed = seed;
    e.power = mean_cost(samples, alpha.points(), r);
    e.value = std::pow(e.power, 1.0 / r);
    if (bootstrap > 1) {
        auto means = kernels::omp::bootstrap_means(costs, bootstrap, seed);
        e.se_power = stddev(means);
        for (double& m : means) m = std::pow(m, 1.0 / r);
        e.se = stddev(means);
    }
    return e;
}

LloydResult lloyd_from(std::span<const double> sorted, const Codebook& init, double r, const LloydOptions& opts) {
    check_order(r);
    if (sorted.empty()) throw Error("no_samples", "lloyd needs samples");
    std::vector<double> pts = init.points();
    LloydResult out;
    double D = mean_cost(sorted, pts, r);
    out.history.push_back(D);
    std::size_t it = 0;
    for (; it < opts.max_iter && D > 0; ++it) {
        const auto begin = cell_starts(sorted, pts);
        auto upd = kernels::omp::update_cells(sorted, begin, pts, r);
        std::vector<double> next = std::move(upd.point);
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        const double Dn = mean_cost(sorted, next, r);
        if (!(Dn <= D)) break;
        const double rel = (D - Dn) / D;
        pts = std::move(next);
        D = Dn;
        out.history.push_back(D);
        if (rel < opts.tol) {
            ++it;
            break;
        }
    }
    out.codebook = Codebook(std::move(pts));
    out.estimate = eval_codebook(sorted, out.codebook, r, opts.seed, opts.bootstrap);
    out.estimate.iterations = it;
    return out;
}

LloydResult lloyd(std::span<const double> samples, std::size_t n, double r, const LloydOptions& opts) {
    check_order(r);
    if (n < 1) throw Error("bad_n", "n must be at least 1");
    if (n > samples.size()) throw Error("bad_n", "n exceeds the sample count");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const std::vector<double> uniq = distinct_values(sorted);

    if (n >= uniq.size()) {
        LloydResult out;
        out.codebook = Codebook(uniq);
        out.estimate = eval_codebook(sorted, out.codebook, r, opts.seed, opts.bootstrap);
        out.history = {out.estimate.power};
        return out;
    }

    std::optional<LloydResult> best;
    const std::size_t restarts = std::max<std::size_t>(opts.restarts, 1);
    for (std::size_t k = 0; k < restarts; ++k) {
        std::vector<double> init;
        if (k == 0)
            init = quantile_init(uniq, n);
        else if (k == 1)
            init = split_init(sorted, n, r);
        else
            init = seeded_init(sorted, n, r, kernels::block_seed(opts.seed, 1000 + k));
        LloydResult res = lloyd_from(sorted, Codebook(init), r, opts);
        res.best_restart = k;
        if (!best || res.estimate.power < best->estimate.power) best = std::move(res);
    }
    return std::move(*best);
}

DimensionFit dimension_fit(std::span<const double> samples, std::span<const std::size_t> n_grid, double r, double xi,
                           const LloydOptions& opts, const UpperAtN& upper) {
    check_order(r);
    if (n_grid.size() < 3) throw Error("bad_grid", "dimension fit needs at least 3 grid points");
    if (!(xi > 0)) throw Error("bad_argument", "xi must be positive");
    DimensionFit fit;
    fit.r = r;
    fit.xi = xi;
    for (std::size_t n : n_grid) {
        const LloydResult res = lloyd(samples, n, r, opts);
        if (!(res.estimate.value > 0)) throw Error("degenerate_fit", "zero distortion at n = " + std::to_string(n));
        FitRow row;
        row.n = n;
        row.e_hat = res.estimate.value;
        row.se = res.estimate.se;
        row.coefficient_proxy = std::pow(static_cast<double>(n), 1.0 / xi) * row.e_hat;
        if (upper) std::tie(row.upper_bound, row.k) = upper(n);
        fit.rows.push_back(row);
    }
    double mx = 0, my = 0;
    for (const auto& row : fit.rows) {
        mx += -std::log(row.e_hat);
        my += std::log(static_cast<double>(row.n));
    }
    const double m = static_cast<double>(fit.rows.size());
    mx /= m;
    my /= m;
    double sxy = 0, sxx = 0;
    for (const auto& row : fit.rows) {
        const double dx = -std::log(row.e_hat) - mx, dy = std::log(static_cast<double>(row.n)) - my;
        sxy += dx * dy;
        sxx += dx * dx;
    }
    if (!(sxx > 0)) throw Error("degenerate_fit", "all errors coincide");
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.proxy_min = fit.proxy_max = fit.rows.front().coefficient_proxy;
    for (const auto& row : fit.rows) {
        fit.proxy_min = std::min(fit.proxy_min, row.coefficient_proxy);
        fit.proxy_max = std::max(fit.proxy_max, row.coefficient_proxy);
    }
    return fit;
}

DimensionFit dimension_fit(const ValidatedSystem& sys, double r, std::span<const std::size_t> n_grid, std::uint64_t seed,
                           const FitOptions& opts) {
    check_order(r);
    const Order order(r);
    const double xi = xi_r(sys.system(), r).xi_r;
    const auto samples = sample(sampler_model(sys), seed, opts.samples);

    // phi_k and the bound on e_{phi_k, r}, computed lazily and shared across n
    std::vector<std::pair<std::size_t, double>> levels;
    bool exhausted = false;
    auto extend = [&](std::size_t n) {
        while (!exhausted && (levels.empty() || levels.back().first <= n)) {
            const unsigned k = static_cast<unsigned>(levels.size()) + 1;
            if (k > opts.k_max) {
                exhausted = true;
                break;
            }
            const PartitionBundle b = build_partition(sys.system(), order, k);
            levels.emplace_back(b.phi, std::pow(static_cast<double>(upper_bound(sys, b).value), 1.0 / r));
        }
    };
    UpperAtN upper = [&](std::size_t n) -> std::pair<std::optional<double>, std::optional<unsigned>> {
        extend(n);
        std::optional<double> u;
        std::optional<unsigned> k;
        for (std::size_t i = 0; i < levels.size(); ++i)
            if (levels[i].first <= n) {
                u = levels[i].second;
                k = static_cast<unsigned>(i + 1);
            }
        return {u, k};
    };
    LloydOptions lo = opts.lloyd;
    lo.seed = seed;
    return dimension_fit(samples, n_grid, r, xi, lo, upper);
}

}  // namespace ismq
