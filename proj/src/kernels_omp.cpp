#include "ismq/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <random>

namespace ismq::kernels::omp {

namespace {

inline std::size_t chunk_begin(std::size_t c, std::size_t n) { return c * n / kReduceChunks; }

}  // namespace

void sample(const SamplerModel& m, std::uint64_t seed, double resolution, std::span<double> out) {
    const auto blocks = static_cast<long>((out.size() + kSampleBlock - 1) / kSampleBlock);
#pragma omp parallel for schedule(dynamic)
    for (long b = 0; b < blocks; ++b) {
        const std::size_t start = static_cast<std::size_t>(b) * kSampleBlock;
        const std::size_t n = std::min(kSampleBlock, out.size() - start);
        sample_block(m, block_seed(seed, static_cast<std::uint64_t>(b)), resolution, out.subspan(start, n));
    }
}

double distortion_sum(std::span<const double> samples, std::span<const double> points, double r) {
    double partial[kReduceChunks] = {};
    const std::size_t n = samples.size();
#pragma omp parallel for schedule(static)
    for (long c = 0; c < static_cast<long>(kReduceChunks); ++c) {
        double s = 0;
        for (std::size_t i = chunk_begin(c, n); i < chunk_begin(c + 1, n); ++i)
            s += nearest_cost(points, samples[i], r);
        partial[c] = s;
    }
    double total = 0;
    for (double s : partial) total += s;
    return total;
}

void costs(std::span<const double> samples, std::span<const double> points, double r, std::span<double> out) {
    const auto n = static_cast<long>(samples.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) out[i] = nearest_cost(points, samples[i], r);
}

std::vector<double> bootstrap_means(std::span<const double> costs, std::size_t resamples, std::uint64_t seed) {
    std::vector<double> means(resamples);
    const double n = static_cast<double>(costs.size());
#pragma omp parallel for schedule(dynamic)
    for (long b = 0; b < static_cast<long>(resamples); ++b) {
        std::mt19937_64 rng(block_seed(seed, static_cast<std::uint64_t>(b)));
        double s = 0;
        for (std::size_t i = 0; i < costs.size(); ++i) {
            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            s += costs[std::min(costs.size() - 1, static_cast<std::size_t>(u * n))];
        }
        means[b] = s / n;
    }
    return means;
}

CellUpdate update_cells(std::span<const double> sorted, std::span<const std::size_t> begin,
                        std::span<const double> current, double r) {
    const std::size_t n = current.size();
    CellUpdate out{std::vector<double>(n), std::vector<double>(n)};
#pragma omp parallel for schedule(dynamic, 16)
    for (long li = 0; li < static_cast<long>(n); ++li) {
        const auto i = static_cast<std::size_t>(li);
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

}  // namespace ismq::kernels::omp
