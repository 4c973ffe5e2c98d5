#pragma once

#include "ismq/system.hpp"

#include <optional>
#include <span>
#include <vector>

namespace ismq {

inline constexpr double kDefaultDimTol = 1e-12;

// sum_i (w_i rho_i^r)^(s / (s + r)); strictly decreasing in s.
double moran_sum(std::span<const double> weights, std::span<const double> ratios, double r, double s);
double moran_sum(const WeightSystem& ws, double r, double s);

// Unique s >= 0 with moran_sum = 1, by bisection on a doubled bracket.
// Both the residual and the bracket width end below tol. A one-letter
// system has no crossing and is rejected as degenerate.
double solve_dim(std::span<const double> weights, std::span<const double> ratios, double r,
                 double tol = kDefaultDimTol);
double solve_dim(const WeightSystem& ws, double r, double tol = kDefaultDimTol);

struct DimResult {
    enum class Branch { inner, outer };

    double r = 0;
    double s_r = 0;  // inner equation (t_j, c_j)
    double t_r = 0;  // outer equation (p_i, s_i)
    double xi_r = 0;
    Branch branch = Branch::inner;
    bool tie = false;  // |s_r - t_r| <= tol
    double residual_s = 0;
    double residual_t = 0;
};

const char* to_string(DimResult::Branch b);

DimResult xi_r(const CondensationSystem& sys, double r, double tol = kDefaultDimTol);

struct R0Result {
    std::optional<double> r0;
    double r_max = 0;
    // grid points below r0 (or all of them when none) at which s_r > t_r held
    std::size_t grid_points_checked = 0;
    bool inner_dominates_below = true;
};

// Smallest r in (0, r_max] where s_r - t_r changes sign, refined by bisection.
R0Result find_r0(const CondensationSystem& sys, double r_max, double tol = 1e-10);

}  // namespace ismq
