#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ismq/bounds.hpp"
#include "ismq/error.hpp"
#include "ismq/fixtures.hpp"
#include "ismq/measure.hpp"
#include "ismq/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace ismq;

namespace {

const std::vector<double>& uniform_draws() {
    static const std::vector<double> xs = [] {
        const auto u = fixtures::uniform_control();
        return sample(self_similar_model(u.maps, u.probs), 3, 100'000);
    }();
    return xs;
}

}  // namespace

TEST_CASE("codebook validation") {
    CHECK_THROWS_AS(Codebook({}), Error);
    CHECK_THROWS_AS(Codebook({0.5, 0.5}), Error);
    CHECK_THROWS_AS(Codebook({0.7, 0.2}), Error);
    CHECK_THROWS_AS(Codebook({NAN}), Error);
    CHECK(Codebook({0.1, 0.2}).n() == 2);
}

TEST_CASE("eval_codebook on a two-point sample") {
    const std::vector<double> xs{0.0, 1.0};
    const auto e = eval_codebook(xs, Codebook({0.5}), 2.0);
    CHECK(e.power == doctest::Approx(0.25));
    CHECK(e.value == doctest::Approx(0.5));
    const auto z = eval_codebook(xs, Codebook({0.0}), 2.0);
    CHECK(z.value == doctest::Approx(std::sqrt(0.5)));
    CHECK_THROWS_AS(eval_codebook(xs, Codebook({0.5}), 0.5), Error);
    CHECK_THROWS_AS(eval_codebook(std::vector<double>{}, Codebook({0.5}), 2.0), Error);
}

TEST_CASE("n = 1 with r = 2 lands on the sample mean") {
    const auto& xs = uniform_draws();
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    const auto res = lloyd(xs, 1, 2.0);
    REQUIRE(res.codebook.n() == 1);
    CHECK(res.codebook.points()[0] == doctest::Approx(mean).epsilon(1e-9));
}

TEST_CASE("n at least the number of distinct values gives zero") {
    const std::vector<double> xs{0.1, 0.1, 0.4, 0.9, 0.9, 0.9};
    const auto res = lloyd(xs, 3, 2.0);
    CHECK(res.estimate.value == 0);
    CHECK(res.codebook.n() == 3);
    CHECK(lloyd(xs, 5, 2.0).estimate.value == 0);
    CHECK_THROWS_AS(lloyd(xs, 7, 2.0), Error);
    CHECK_THROWS_AS(lloyd(xs, 0, 2.0), Error);
    CHECK_THROWS_AS(lloyd(xs, 2, 0.25), Error);
}

TEST_CASE("uniform control matches 1/(12 n^2)") {
    const auto& xs = uniform_draws();
    for (std::size_t n : {2, 16, 64}) {
        const auto res = lloyd(xs, n, 2.0);
        const double ref = 1.0 / (12.0 * n * n);
        CHECK(std::fabs(res.estimate.power / ref - 1) <= 0.15);
    }
    const auto two = lloyd(xs, 2, 2.0);
    CHECK(two.codebook.points()[0] == doctest::Approx(0.25).epsilon(0.02));
    CHECK(two.codebook.points()[1] == doctest::Approx(0.75).epsilon(0.02));
}

TEST_CASE("history never increases") {
    const auto xs = sample(sampler_model(ValidatedSystem::validate(fixtures::example_315())), 4, 40'000);
    for (double r : {1.0, 2.0, 3.0}) {
        const auto res = lloyd(xs, 24, r);
        REQUIRE_FALSE(res.history.empty());
        for (std::size_t i = 1; i < res.history.size(); ++i) CHECK(res.history[i] <= res.history[i - 1]);
        CHECK(res.estimate.power == doctest::Approx(res.history.back()).epsilon(1e-9));
    }
}

TEST_CASE("error is non-increasing in n on shared samples") {
    const auto xs = sample(sampler_model(ValidatedSystem::validate(fixtures::example_315())), 8, 40'000);
    double prev = INFINITY;
    for (std::size_t n : {1, 2, 4, 8, 16, 32, 64, 128}) {
        const double e = lloyd(xs, n, 2.0).estimate.value;
        CHECK(e <= prev);
        prev = e;
    }
}

TEST_CASE("lloyd beats the explicit codebook on shared samples") {
    const auto sys = ValidatedSystem::validate(fixtures::example_315());
    const auto xs = sample(sampler_model(sys), 5, 60'000);
    for (unsigned k = 1; k <= 3; ++k) {
        const auto ub = upper_bound(sys, build_partition(sys.system(), Order(2.0), k));
        const Codebook cb(ub.codebook);
        const auto fixed = eval_codebook(xs, cb, 2.0);
        const auto opt = lloyd(xs, cb.n(), 2.0);
        CHECK(opt.estimate.power <= fixed.power);
        // starting from the explicit codebook can only improve it
        std::vector<double> sorted = xs;
        std::sort(sorted.begin(), sorted.end());
        CHECK(lloyd_from(sorted, cb, 2.0).estimate.power <= fixed.power);
    }
}

TEST_CASE("restarts are deterministic per seed") {
    const auto& xs = uniform_draws();
    LloydOptions o;
    o.seed = 12;
    const auto a = lloyd(xs, 10, 2.0, o), b = lloyd(xs, 10, 2.0, o);
    CHECK(a.codebook.points() == b.codebook.points());
    CHECK(a.estimate.se == b.estimate.se);
}

TEST_CASE("dimension fit on the Cantor control") {
    const auto c = fixtures::cantor_control();
    const auto xs = sample(self_similar_model(c.maps, c.probs), 1, 100'000);
    const std::vector<std::size_t> grid{8, 16, 32, 64, 128, 256};
    const double d = std::log(2.0) / std::log(3.0);
    const auto fit = dimension_fit(xs, grid, 2.0, d, LloydOptions{});
    CHECK(fit.rows.size() == grid.size());
    CHECK(std::fabs(fit.slope / d - 1) <= 0.1);
    CHECK(fit.proxy_max / fit.proxy_min <= 10);
    const std::vector<std::size_t> short_grid{8, 16};
    CHECK_THROWS_AS(dimension_fit(xs, short_grid, 2.0, d, LloydOptions{}), Error);
}

TEST_CASE("fit rows carry the analytic bound at the largest matching phi") {
    const auto sys = ValidatedSystem::validate(fixtures::example_315());
    const std::vector<std::size_t> grid{8, 12, 40, 100};
    FitOptions o;
    o.samples = 20'000;
    const auto fit = dimension_fit(sys, 2.0, grid, 3, o);
    REQUIRE(fit.rows.size() == 4);
    CHECK_FALSE(fit.rows[0].upper_bound);
    REQUIRE(fit.rows[1].k);
    CHECK(*fit.rows[1].k == 1);
    CHECK(*fit.rows[2].k == 2);
    CHECK(*fit.rows[3].k == 3);
    const auto ub = upper_bound(sys, build_partition(sys.system(), Order(2.0), 2));
    CHECK(*fit.rows[2].upper_bound == doctest::Approx(std::sqrt(static_cast<double>(ub.value))));
    for (const auto& row : fit.rows)
        CHECK(row.coefficient_proxy == doctest::Approx(std::pow(double(row.n), 1 / fit.xi) * row.e_hat));
}
