#include "ismq/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace ismq::kernels {

double power_cost(double d, double r) {
    if (r == 2.0) return d * d;
    if (r == 1.0) return d;
    return std::pow(d, r);
}

double nearest_cost(std::span<const double> points, double x, double r) {
    auto it = std::lower_bound(points.begin(), points.end(), x);
    double d = std::numeric_limits<double>::infinity();
    if (it != points.end()) d = *it - x;
    if (it != points.begin()) d = std::min(d, x - *(it - 1));
    return power_cost(d, r);
}

std::uint64_t block_seed(std::uint64_t seed, std::uint64_t block) {
    // splitmix64 finalizer over (seed, block)
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (block + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::size_t pick(std::span<const double> cumulative, double u) {
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
}

}  // namespace

void sample_block(const SamplerModel& m, std::uint64_t seed, double resolution, std::span<double> out) {
    std::mt19937_64 rng(seed);
    // cumulative outer probabilities p_0, p_0 + p_1, ...
    std::vector<double> outer_cum(m.outer_probs.size());
    std::partial_sum(m.outer_probs.begin(), m.outer_probs.end(), outer_cum.begin());
    std::vector<double> inner_cum(m.inner_probs.size());
    std::partial_sum(m.inner_probs.begin(), m.inner_probs.end(), inner_cum.begin());
    const double width = m.hull_hi - m.hull_lo;
    const double mid = 0.5 * (m.hull_lo + m.hull_hi);
    // a non-positive resolution would never end the inner descent
    if (!(resolution > 0)) resolution = std::ldexp(width, -40);

    for (double& x : out) {
        AffineMap F;
        for (;;) {
            const std::size_t i = pick(outer_cum, uniform01(rng));
            if (i == 0) break;  // stop here with probability p_0
            const AffineMap& f = m.outer[i - 1];
            F.offset += F.scale * f.offset;
            F.scale *= f.scale;
        }
        AffineMap G;
        while (std::fabs(G.scale) * width >= resolution) {
            const AffineMap& g = m.inner[pick(inner_cum, uniform01(rng))];
            G.offset += G.scale * g.offset;
            G.scale *= g.scale;
        }
        x = F.scale * (G.scale * mid + G.offset) + F.offset;
    }
}

double cell_cost(std::span<const double> cell, double a, double r) {
    double s = 0;
    for (double x : cell) s += power_cost(std::fabs(x - a), r);
    return s;
}

double cell_centroid(std::span<const double> cell, double r) {
    if (cell.empty()) return 0;
    if (r == 2.0) {
        double s = 0;
        for (double x : cell) s += x;
        return std::clamp(s / static_cast<double>(cell.size()), cell.front(), cell.back());
    }
    static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = cell.front(), hi = cell.back();
    double a = hi - inv_phi * (hi - lo), b = lo + inv_phi * (hi - lo);
    double fa = cell_cost(cell, a, r), fb = cell_cost(cell, b, r);
    const double tol = 1e-13 * std::max({1.0, std::fabs(lo), std::fabs(hi)});
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        if (fa <= fb) {
            hi = b;
            b = a;
            fb = fa;
            a = hi - inv_phi * (hi - lo);
            fa = cell_cost(cell, a, r);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + inv_phi * (hi - lo);
            fb = cell_cost(cell, b, r);
        }
    }
    return fa <= fb ? a : b;
}

namespace serial {

void sample(const SamplerModel& m, std::uint64_t seed, double resolution, std::span<double> out) {
    for (std::size_t start = 0, b = 0; start < out.size(); start += kSampleBlock, ++b) {
        const std::size_t n = std::min(kSampleBlock, out.size() - start);
        sample_block(m, block_seed(seed, b), resolution, out.subspan(start, n));
    }
}

double distortion_sum(std::span<const double> samples, std::span<const double> points, double r) {
    double s = 0;
    for (double x : samples) s += nearest_cost(points, x, r);
    return s;
}

void costs(std::span<const double> samples, std::span<const double> points, double r, std::span<double> out) {
    for (std::size_t i = 0; i < samples.size(); ++i) out[i] = nearest_cost(points, samples[i], r);
}

std::vector<double> bootstrap_means(std::span<const double> costs, std::size_t resamples, std::uint64_t seed) {
    std::vector<double> means(resamples);
    const double n = static_cast<double>(costs.size());
    for (std::size_t b = 0; b < resamples; ++b) {
        std::mt19937_64 rng(block_seed(seed, b));
        double s = 0;
        for (std::size_t i = 0; i < costs.size(); ++i) {
            const auto idx = std::min(costs.size() - 1, static_cast<std::size_t>(uniform01(rng) * n));
            s += costs[idx];
        }
        means[b] = s / n;
    }
    return means;
}

CellUpdate update_cells(std::span<const double> sorted, std::span<const std::size_t> begin,
                        std::span<const double> current, double r) {
    const std::size_t n = current.size();
    CellUpdate out{std::vector<double>(n), std::vector<double>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        const auto cell = sorted.subspan(begin[i], begin[i + 1] - begin[i]);
        out.point[i] = current[i];
        if (cell.empty()) continue;
        const double old_cost = cell_cost(cell, current[i], r);
        const double a = cell_centroid(cell, r);
        const double new_cost = cell_cost(cell, a, r);
        if (new_cost < old_cost) {
            out.point[i] = a;
            out.cost[i] = new_cost;
        } else {
            out.cost[i] = old_cost;
        }
    }
    return out;
}

}  // namespace serial

}  // namespace ismq::kernels
