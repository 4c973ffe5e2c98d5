#pragma once

#include "ismq/kernels.hpp"
#include "ismq/system.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace ismq {

// Strictly increasing code points.
class Codebook {
public:
    explicit Codebook(std::vector<double> points);

    const std::vector<double>& points() const noexcept { return points_; }
    std::size_t n() const noexcept { return points_.size(); }

private:
    std::vector<double> points_;
};

struct ErrorEstimate {
    std::size_t n = 0;
    double r = 0;
    double value = 0;     // (mean cost)^{1/r}
    double se = 0;        // bootstrap standard error of value
    double power = 0;     // mean cost, value^r
    double se_power = 0;  // bootstrap standard error of power
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    std::size_t iterations = 0;
};

inline constexpr std::size_t kDefaultBootstrap = 32;

// Mean of min_a |x - a|^r over the samples, with a bootstrap error bar.
ErrorEstimate eval_codebook(std::span<const double> samples, const Codebook& alpha, double r,
                            std::uint64_t seed = 0, std::size_t bootstrap = kDefaultBootstrap);

struct LloydOptions {
    std::size_t restarts = 5;
    std::size_t max_iter = 200;
    double tol = 1e-10;
    std::size_t bootstrap = kDefaultBootstrap;
    std::uint64_t seed = 0;
};

struct LloydResult {
    Codebook codebook{{0.0}};
    ErrorEstimate estimate;
    std::vector<double> history;  // mean cost after each accepted step of the best restart
    std::size_t best_restart = 0;
};

// Restart 0 starts from sample quantiles, restart 1 from greedy cell
// splitting, the others from D^r-weighted random seeding.
LloydResult lloyd(std::span<const double> samples, std::size_t n, double r, const LloydOptions& opts = {});

// Single run from a given codebook; `sorted` must be sorted ascending.
LloydResult lloyd_from(std::span<const double> sorted, const Codebook& init, double r, const LloydOptions& opts = {});

struct FitRow {
    std::size_t n = 0;
    double e_hat = 0;
    double se = 0;
    std::optional<double> upper_bound;  // analytic bound on e_{n,r} from the largest k with phi_k <= n
    std::optional<unsigned> k;
    double coefficient_proxy = 0;  // n^{1/xi} e_hat
};

struct DimensionFit {
    double r = 0;
    double xi = 0;
    double slope = 0;  // least squares of log n on -log e_hat
    double intercept = 0;
    double proxy_min = 0;
    double proxy_max = 0;
    std::vector<FitRow> rows;
};

using UpperAtN = std::function<std::pair<std::optional<double>, std::optional<unsigned>>(std::size_t n)>;

DimensionFit dimension_fit(std::span<const double> samples, std::span<const std::size_t> n_grid, double r,
                           double xi, const LloydOptions& opts, const UpperAtN& upper = {});

struct FitOptions {
    std::size_t samples = 200'000;
    LloydOptions lloyd;
    unsigned k_max = 64;
};

// Samples mu, fits, and attaches the analytic bound at the matching phi.
DimensionFit dimension_fit(const ValidatedSystem& sys, double r, std::span<const std::size_t> n_grid,
                           std::uint64_t seed, const FitOptions& opts = {});

}  // namespace ismq
