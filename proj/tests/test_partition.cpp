#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ismq/bounds.hpp"
#include "ismq/dims.hpp"
#include "ismq/error.hpp"
#include "ismq/fixtures.hpp"
#include "ismq/measure.hpp"
#include "ismq/partition.hpp"

#include <cmath>

using namespace ismq;

namespace {

Word w(unsigned n, std::vector<unsigned> letters) { return Word(n, std::move(letters)); }

// Frozen from tests/oracles/partition_oracle.py, which enumerates every word
// to depth 14 and applies the set definitions with exact fractions.
struct OracleRow {
    unsigned k;
    std::size_t N, l1, l2, psi, lam, phi;
    const char* cyl;
    const char* tail;
};

const OracleRow ex_r2[] = {
    {1, 4, 2, 2, 3, 0, 12, "11/12288", "1/576"},
    {2, 8, 3, 3, 7, 0, 32, "97/2359296", "1/13824"},
    {3, 16, 4, 4, 15, 0, 80, "803/452984832", "1/331776"},
    {4, 64, 6, 6, 63, 0, 288, "20027/260919263232", "1/191102976"},
    {5, 128, 7, 7, 127, 0, 704, "64177/50096498540544", "1/4586471424"},
    {6, 256, 8, 8, 255, 0, 1664, "225299/9618527719784448", "1/110075314176"},
};

const OracleRow fa_r2[] = {
    {1, 4, 2, 2, 3, 0, 12, "115087/74649600", "1089/640000"},
    {2, 9, 3, 4, 8, 1, 35, "2003965897/25798901760000", "670609/16384000000"},
    {3, 21, 4, 5, 20, 5, 102, "663333014693/371504185344000000", "10625097/13107200000000"},
    {4, 59, 5, 7, 58, 27, 318, "335017286493374923/10399739562845798400000000", "1888301057/335544320000000000"},
};

const OracleRow ex_r1[] = {
    {1, 4, 2, 2, 3, 0, 12, "7/192", "1/36"},
    {2, 8, 3, 3, 7, 0, 32, "37/4608", "1/216"},
    {3, 16, 4, 4, 15, 0, 80, "175/110592", "1/1296"},
};

void check_rows(const CondensationSystem& raw, const Order& r, std::span<const OracleRow> rows) {
    const auto sys = ValidatedSystem::validate(raw);
    for (const auto& row : rows) {
        CAPTURE(row.k);
        const auto b = build_partition(raw, r, row.k);
        CHECK(b.N_kr == row.N);
        CHECK(b.l1 == row.l1);
        CHECK(b.l2 == row.l2);
        CHECK(b.psi.size() == row.psi);
        CHECK(b.lambda_star.size() == row.lam);
        CHECK(b.phi == row.phi);
        CHECK(b.boundary_comparisons == 0);
        const auto sums = stopping_sums(sys, b);
        REQUIRE(sums.cylinder_exact);
        REQUIRE(sums.tail_exact);
        CHECK(*sums.cylinder_exact == parse_rational(row.cyl));
        CHECK(*sums.tail_exact == parse_rational(row.tail));
        Rational mass = 0;
        for (const auto& p : decompose(sys, b.gamma.members)) mass += p.mass;
        CHECK(mass == 1);
    }
}

}  // namespace

TEST_CASE("oracle tables") {
    check_rows(fixtures::example_315(), Order(2.0), ex_r2);
    check_rows(fixtures::fixture_a(), Order(2.0), fa_r2);
    check_rows(fixtures::example_315(), Order(1.0), ex_r1);
}

TEST_CASE("eta and thresholds") {
    const auto sys = fixtures::example_315();
    const Order r(2.0);
    CHECK(eta_lo(sys, r).power() == Rational(1, 128));
    CHECK(eta_hi(sys, r).power() == Rational(1, 48));
    CHECK(threshold(sys, r, 3).power() == Rational(1, 128 * 128 * 128));
    CHECK_THROWS_AS(threshold(sys, r, 0), Error);
    CHECK_THROWS_AS(build_partition(sys, r, 0), Error);
}

TEST_CASE("stopping conditions hold for every member") {
    for (const auto& raw : {fixtures::example_315(), fixtures::fixture_a(), fixtures::fixture_b()}) {
        for (const Order& r : {Order(1.0), Order(2.0), Order::parse("3/2"), Order(0.37)}) {
            for (unsigned k = 1; k <= 4; ++k) {
                const auto b = build_partition(raw, r, k);
                const Level T = threshold(raw, r, k);
                const Level lo = T * eta_lo(raw, r);
                CHECK(check_maximal_antichain(b.gamma.members, raw.N()).maximal());
                for (const Word& g : b.gamma.members) {
                    const Level x = outer_level(raw, r, g);
                    CHECK(compare(outer_level(raw, r, predecessor(g)), T).sign >= 0);
                    CHECK(compare(x, T).sign < 0);
                    // one more letter takes the level down by at most eta
                    CHECK(compare(x, lo).sign >= 0);
                }
                CHECK(b.psi.size() == strict_prefixes(b.gamma.members).size());
                for (std::size_t i = 0; i < b.psi.size(); ++i) {
                    const Word& sigma = b.psi[i];
                    CHECK(check_maximal_antichain(b.inner[i].members, raw.M()).maximal());
                    const Level xs = outer_level(raw, r, sigma);
                    for (const Word& rho : b.inner[i].members) {
                        CHECK(compare(xs * inner_level(raw, r, predecessor(rho)), T).sign >= 0);
                        CHECK(compare(xs * inner_level(raw, r, rho), T).sign < 0);
                    }
                    if (sigma.length() >= b.l1)
                        CHECK(std::find(b.lambda_star.begin(), b.lambda_star.end(), sigma) !=
                              b.lambda_star.end());
                }
            }
        }
    }
}

TEST_CASE("moran sums over stopping sets equal one") {
    const auto raw = fixtures::fixture_b();
    const double r = 1.5;
    const Order ord(r);
    const auto d = xi_r(raw, r);
    const auto b = build_partition(raw, ord, 3);
    long double outer = 0;
    for (const Word& g : b.gamma.members)
        outer += std::pow(outer_level(raw, ord, g).approx(), static_cast<long double>(d.t_r / (d.t_r + r)));
    CHECK(static_cast<double>(outer) == doctest::Approx(1.0).epsilon(1e-10));
    for (const auto& in : b.inner) {
        long double s = 0;
        for (const Word& rho : in.members)
            s += std::pow(inner_level(raw, ord, rho).approx(), static_cast<long double>(d.s_r / (d.s_r + r)));
        CHECK(static_cast<double>(s) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("inner antichains") {
    const auto sys = fixtures::example_315();
    const Order r(2.0);
    const auto root = build_inner(sys, r, 1, Word(2));
    CHECK(root.members == all_words(2, 2));
    const auto one = build_inner(sys, r, 1, w(2, {1}));
    CHECK(one.members == all_words(2, 1));
    CHECK_THROWS_AS(build_inner(sys, r, 1, w(2, {1, 1})), Error);
}

TEST_CASE("phi grows within the d1 band") {
    for (const auto& raw : {fixtures::example_315(), fixtures::fixture_a(), fixtures::fixture_b()}) {
        const Order r(2.0);
        const auto g = growth_constants(raw, r);
        CHECK(compare(g.eta_hi.pow(g.H), g.eta_lo).sign < 0);
        if (g.H > 1) CHECK(compare(g.eta_hi.pow(g.H - 1), g.eta_lo).sign >= 0);
        std::size_t prev = build_partition(raw, r, 1).phi;
        for (unsigned k = 2; k <= 6; ++k) {
            const std::size_t cur = build_partition(raw, r, k).phi;
            CHECK(cur >= prev);
            CHECK(BigInt(static_cast<unsigned long>(cur)) <= g.d1 * static_cast<unsigned long>(prev));
            prev = cur;
        }
    }
    const auto g = growth_constants(fixtures::example_315(), Order(2.0));
    CHECK(g.H == 2);
    CHECK(g.D == 6);
    CHECK(g.d1 == 25);
}

TEST_CASE("I_k") {
    const auto raw = fixtures::example_315();
    const auto b = build_partition(raw, Order(2.0), 4);
    const long double a = I_k(raw, b, 0.3), c = I_k(raw, b, 0.6);
    CHECK(a > c);
    CHECK(c > 0);
    // at s = t_r the tail part collapses to 1
    const auto d = xi_r(raw, 2.0);
    CHECK(I_k(raw, b, d.t_r) > 1.0L);
    CHECK_THROWS_AS(I_k(raw, b, 0.0), Error);
}

TEST_CASE("budget is enforced") {
    PartitionOptions tiny;
    tiny.node_budget = 10;
    CHECK_THROWS_AS(build_partition(fixtures::example_315(), Order(2.0), 6, tiny), Error);
}

TEST_CASE("I_k at s_r stays below the geometric bound when the inner branch dominates") {
    const auto raw = fixtures::example_315();
    const double r = 0.5;
    const auto d = xi_r(raw, r);
    REQUIRE(d.s_r > d.t_r);
    const double b = moran_sum(raw.outer_weights(), r, d.s_r);
    REQUIRE(b < 1);
    for (unsigned k = 1; k <= 6; ++k) CHECK(I_k(raw, build_partition(raw, Order(r), k), d.s_r) < 1 / (1 - b) + 1);
}

TEST_CASE("I_k at a tie is at least l1") {
    const auto raw = fixtures::tie_fixture();
    const auto d = xi_r(raw, 2.0);
    REQUIRE(std::fabs(d.s_r - d.t_r) < 1e-9);
    for (unsigned k = 1; k <= 6; ++k) {
        const auto b = build_partition(raw, Order(2.0), k);
        CHECK(I_k(raw, b, d.s_r) >= static_cast<long double>(b.l1));
    }
}
