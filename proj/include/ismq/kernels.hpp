#pragma once

// Data-parallel inner loops. Every kernel exists twice: a plain loop in
// `serial` (the reference used by tests) and an OpenMP version in `omp`.
// The OpenMP variants split work into a fixed number of chunks that does not
// depend on the thread count and reduce the chunk results in order, so their
// output is identical across thread counts and runs.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ismq::kernels {

struct AffineMap {
    double scale = 1;
    double offset = 0;
};

// Plain-double copy of a condensation system for sampling.
struct SamplerModel {
    std::vector<AffineMap> outer;
    std::vector<double> outer_probs;  // p_0, p_1, ..., p_N; p_0 > 0
    std::vector<AffineMap> inner;
    std::vector<double> inner_probs;
    double hull_lo = 0;  // hull of the condensation support C
    double hull_hi = 1;
};

inline constexpr std::size_t kSampleBlock = 4096;
inline constexpr std::size_t kReduceChunks = 64;

// Cost |x - a|^r of one sample against its nearest code point.
// `points` must be sorted and nonempty.
double nearest_cost(std::span<const double> points, double x, double r);

// Shared helpers used by both variants.
double power_cost(double d, double r);
std::uint64_t block_seed(std::uint64_t seed, std::uint64_t block);
void sample_block(const SamplerModel& m, std::uint64_t seed, double resolution, std::span<double> out);

// Per-cell sufficient data for Lloyd updates. Cells are index ranges into the
// sorted samples: cell i covers [begin[i], begin[i+1]).
struct CellUpdate {
    std::vector<double> point;
    std::vector<double> cost;  // cost of the cell at the new point
};

namespace serial {

void sample(const SamplerModel& m, std::uint64_t seed, double resolution, std::span<double> out);
double distortion_sum(std::span<const double> samples, std::span<const double> points, double r);
void costs(std::span<const double> samples, std::span<const double> points, double r, std::span<double> out);
// resampled means of `costs` (with replacement), one per resample
std::vector<double> bootstrap_means(std::span<const double> costs, std::size_t resamples, std::uint64_t seed);
CellUpdate update_cells(std::span<const double> sorted, std::span<const std::size_t> begin,
                        std::span<const double> current, double r);

}  // namespace serial

namespace omp {

void sample(const SamplerModel& m, std::uint64_t seed, double resolution, std::span<double> out);
double distortion_sum(std::span<const double> samples, std::span<const double> points, double r);
void costs(std::span<const double> samples, std::span<const double> points, double r, std::span<double> out);
std::vector<double> bootstrap_means(std::span<const double> costs, std::size_t resamples, std::uint64_t seed);
CellUpdate update_cells(std::span<const double> sorted, std::span<const std::size_t> begin,
                        std::span<const double> current, double r);

}  // namespace omp

// Generalized centroid argmin_a sum |x - a|^r over a sorted cell, r >= 1.
// Golden-section search on [front, back]; r == 2 uses the mean.
double cell_centroid(std::span<const double> cell, double r);
double cell_cost(std::span<const double> cell, double a, double r);

}  // namespace ismq::kernels
