#include "ismq/dims.hpp"

#include "ismq/error.hpp"

#include <cmath>

namespace ismq {

namespace {

std::vector<double> to_doubles(std::span<const Rational> v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& q : v) out.push_back(q.get_d());
    return out;
}

}  // namespace

double moran_sum(std::span<const double> weights, std::span<const double> ratios, double r, double s) {
    if (weights.size() != ratios.size() || weights.empty())
        throw Error("bad_weights", "moran_sum needs matching nonempty weights and ratios");
    if (!(r > 0) || !(s >= 0)) throw Error("bad_argument", "moran_sum needs r > 0 and s >= 0");
    const long double e = static_cast<long double>(s) / (static_cast<long double>(s) + r);
    long double total = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const long double base = std::log(static_cast<long double>(weights[i])) +
                                 static_cast<long double>(r) * std::log(static_cast<long double>(ratios[i]));
        if (!(base < 0)) throw Error("bad_weights", "every w_i rho_i^r must be below 1");
        total += std::exp(e * base);
    }
    return static_cast<double>(total);
}

double moran_sum(const WeightSystem& ws, double r, double s) {
    return moran_sum(to_doubles(ws.weights), to_doubles(ws.ratios), r, s);
}

double solve_dim(std::span<const double> weights, std::span<const double> ratios, double r, double tol) {
    if (weights.size() < 2)
        throw Error("degenerate_equation", "a single-term Moran sum equals 1 only at s = 0");
    auto f = [&](double s) { return moran_sum(weights, ratios, r, s) - 1.0; };
    double lo = 0, hi = 1;
    while (f(hi) >= 0) {
        hi *= 2;
        if (hi > 1e12) throw Error("no_root", "Moran sum does not drop below 1");
    }
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 400; ++it) {
        mid = 0.5 * (lo + hi);
        const double v = f(mid);
        if (hi - lo <= tol && std::fabs(v) <= tol) break;
        if (v > 0)
            lo = mid;
        else
            hi = mid;
    }
    return mid;
}

double solve_dim(const WeightSystem& ws, double r, double tol) {
    return solve_dim(to_doubles(ws.weights), to_doubles(ws.ratios), r, tol);
}

const char* to_string(DimResult::Branch b) { return b == DimResult::Branch::inner ? "inner" : "outer"; }

DimResult xi_r(const CondensationSystem& sys, double r, double tol) {
    DimResult d;
    d.r = r;
    d.s_r = solve_dim(sys.inner_weights(), r, tol);
    d.t_r = solve_dim(sys.outer_weights(), r, tol);
    d.residual_s = std::fabs(moran_sum(sys.inner_weights(), r, d.s_r) - 1.0);
    d.residual_t = std::fabs(moran_sum(sys.outer_weights(), r, d.t_r) - 1.0);
    d.branch = d.s_r >= d.t_r ? DimResult::Branch::inner : DimResult::Branch::outer;
    d.xi_r = std::max(d.s_r, d.t_r);
    d.tie = std::fabs(d.s_r - d.t_r) <= tol;
    return d;
}

R0Result find_r0(const CondensationSystem& sys, double r_max, double tol) {
    if (!(r_max > 0)) throw Error("bad_argument", "r_max must be positive");
    const double dim_tol = std::min(kDefaultDimTol, tol * 1e-2);
    auto gap = [&](double r) {
        return solve_dim(sys.inner_weights(), r, dim_tol) - solve_dim(sys.outer_weights(), r, dim_tol);
    };
    R0Result out;
    out.r_max = r_max;

    double r_min = r_max * 1e-4;
    while (gap(r_min) <= 0 && r_min > 1e-12) r_min *= 0.5;

    constexpr int kGrid = 400;
    const double step = std::pow(r_max / r_min, 1.0 / (kGrid - 1));
    double prev = r_min;
    for (int j = 0; j < kGrid; ++j) {
        const double r = j == kGrid - 1 ? r_max : r_min * std::pow(step, j);
        const double g = gap(r);
        if (g <= 0) {
            double lo = prev, hi = r;
            while (hi - lo > tol) {
                const double mid = 0.5 * (lo + hi);
                if (gap(mid) > 0)
                    lo = mid;
                else
                    hi = mid;
            }
            out.r0 = 0.5 * (lo + hi);
            return out;
        }
        ++out.grid_points_checked;
        prev = r;
    }
    return out;
}

}  // namespace ismq
