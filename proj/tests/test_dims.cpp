#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ismq/dims.hpp"
#include "ismq/error.hpp"
#include "ismq/fixtures.hpp"

#include <cmath>
#include <random>

using namespace ismq;

TEST_CASE("two-map example at r = 2") {
    const auto d = xi_r(fixtures::example_315(), 2.0);
    CHECK(d.s_r == doctest::Approx(1.0 / 3).epsilon(1e-11));
    const double x = std::log(2.0) / std::log(48.0);
    CHECK(d.t_r == doctest::Approx(2 * x / (1 - x)).epsilon(1e-11));
    CHECK(d.branch == DimResult::Branch::outer);
    CHECK(d.xi_r == d.t_r);
    CHECK_FALSE(d.tie);
    CHECK(std::fabs(d.residual_s) <= 1e-12);
    CHECK(std::fabs(d.residual_t) <= 1e-12);
}

TEST_CASE("closed form on both branches of the two-map example") {
    // inner: s/(s+r) (1 + 3r) = 1 gives 1/3, outer: t/(t+r) (log2 3 + 2r) = 1
    const double l3 = std::log2(3.0);
    for (double r : {0.1, 0.3, 0.5, 1.0, 2.0, 4.0}) {
        const auto d = xi_r(fixtures::example_315(), r);
        CHECK(d.s_r == doctest::Approx(1.0 / 3).epsilon(1e-10));
        CHECK(d.t_r == doctest::Approx(r / (l3 + 2 * r - 1)).epsilon(1e-10));
        CHECK(d.xi_r == std::max(d.s_r, d.t_r));
    }
}

TEST_CASE("Cantor weights give log 2 / log 3 at every order") {
    const double w[] = {0.5, 0.5}, c[] = {1.0 / 3, 1.0 / 3};
    for (double r : {0.5, 1.0, 2.0, 5.0})
        CHECK(solve_dim(w, c, r) == doctest::Approx(std::log(2.0) / std::log(3.0)).epsilon(1e-11));
}

TEST_CASE("moran_sum is strictly decreasing") {
    const double w[] = {0.2, 0.5, 0.3}, c[] = {0.3, 0.1, 0.25};
    double prev = moran_sum(w, c, 1.5, 0.0);
    CHECK(prev == doctest::Approx(3.0));
    for (int i = 1; i <= 50; ++i) {
        const double cur = moran_sum(w, c, 1.5, 0.1 * i);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("solve_dim is invariant under permutation") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.05, 0.6);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> w(4), c(4);
        double s = 0;
        for (auto& x : w) s += (x = u(rng));
        for (auto& x : w) x /= s;
        for (auto& x : c) x = u(rng);
        const double base = solve_dim(w, c, 1.7);
        std::vector<std::size_t> idx{3, 1, 0, 2};
        std::vector<double> w2, c2;
        for (auto i : idx) {
            w2.push_back(w[i]);
            c2.push_back(c[i]);
        }
        CHECK(solve_dim(w2, c2, 1.7) == doctest::Approx(base).epsilon(1e-11));
        CHECK(std::fabs(moran_sum(w, c, 1.7, base) - 1) <= 1e-12);
    }
}

TEST_CASE("degenerate and invalid inputs") {
    const double w1[] = {1.0}, c1[] = {0.5};
    CHECK_THROWS_AS(solve_dim(w1, c1, 1.0), Error);
    const double w[] = {0.5, 0.5}, c[] = {0.5, 0.5};
    CHECK_THROWS_AS(moran_sum(w, c, -1.0, 0.5), Error);
    CHECK_THROWS_AS(moran_sum(w, c, 1.0, -0.5), Error);
    const double c2[] = {0.5};
    CHECK_THROWS_AS(moran_sum(w, c2, 1.0, 0.5), Error);
}

TEST_CASE("ties are flagged") {
    const auto d = xi_r(fixtures::tie_fixture(), 2.0);
    CHECK(d.tie);
    CHECK(d.s_r == doctest::Approx(1.0 / 3).epsilon(1e-11));
    CHECK(d.t_r == doctest::Approx(1.0 / 3).epsilon(1e-11));
}

TEST_CASE("find_r0 on the two-map example") {
    const auto res = find_r0(fixtures::example_315(), 10.0);
    REQUIRE(res.r0);
    CHECK(*res.r0 == doctest::Approx(std::log2(3.0) - 1).epsilon(1e-9));
    CHECK(res.inner_dominates_below);
    CHECK(res.grid_points_checked > 0);
    for (int i = 1; i <= 10; ++i) {
        const double r = *res.r0 * i / 11.0;
        const auto d = xi_r(fixtures::example_315(), r);
        CHECK(d.s_r > d.t_r);
    }
    const auto above = xi_r(fixtures::example_315(), *res.r0 * 1.5);
    CHECK(above.t_r > above.s_r);
}

TEST_CASE("find_r0 reports no crossing") {
    const auto res = find_r0(fixtures::no_crossing_fixture(), 20.0);
    CHECK_FALSE(res.r0);
    CHECK(res.r_max == 20.0);
    CHECK(res.inner_dominates_below);
    CHECK_THROWS_AS(find_r0(fixtures::example_315(), 0.0), Error);
}

TEST_CASE("r_max below the crossing reports none") {
    const auto res = find_r0(fixtures::example_315(), 0.5);
    CHECK_FALSE(res.r0);
}
