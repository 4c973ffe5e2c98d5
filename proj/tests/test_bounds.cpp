#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ismq/bounds.hpp"
#include "ismq/error.hpp"
#include "ismq/fixtures.hpp"
#include "ismq/measure.hpp"
#include "ismq/quantizer.hpp"

#include <cmath>

using namespace ismq;

namespace {

Word w(unsigned n, std::vector<unsigned> letters) { return Word(n, std::move(letters)); }

const ValidatedSystem& ex() {
    static const ValidatedSystem s = ValidatedSystem::validate(fixtures::example_315());
    return s;
}

}  // namespace

TEST_CASE("markers on the two-map example") {
    const auto m = find_markers(ex());
    CHECK(m.tau0 == w(2, {1, 2}));
    CHECK(m.rho0 == w(2, {1, 2}));
    CHECK(m.eps0 == Rational(11, 84));
    CHECK(m.delta3 == Rational(8, 21));
    CHECK(m.delta == Rational(5, 192));
    CHECK(m.delta == std::min({m.delta0, m.delta1, m.delta2, m.delta3}));
    CHECK(separation_constant(ex(), m) == m.delta);
    CHECK(ex()->open_set().contains(m.tau0_image));
    CHECK(m.V.contains(m.rho0_image));
    CHECK(m.W.contains(ex().hull_C()));
}

TEST_CASE("markers are found on every fixture") {
    for (const auto& raw : {fixtures::fixture_a(), fixtures::fixture_b(), fixtures::tie_fixture()}) {
        const auto sys = ValidatedSystem::validate(raw);
        const auto m = find_markers(sys);
        CHECK_FALSE(m.tau0.empty());
        CHECK_FALSE(m.rho0.empty());
        CHECK(m.delta > 0);
        CHECK(sys->open_set().contains(m.tau0_image));
    }
    MarkerOptions none;
    none.depth = 0;
    CHECK_THROWS_AS(find_markers(ex(), none), Error);
}

TEST_CASE("test family masses and counts") {
    const auto m = find_markers(ex());
    const auto& ow = ex()->outer_weights();
    const auto& iw = ex()->inner_weights();
    for (unsigned k = 1; k <= 3; ++k) {
        const auto b = build_partition(ex().system(), Order(2.0), k);
        const auto pieces = test_family(ex(), b, m);
        CHECK(pieces.size() == b.phi);
        for (const auto& p : pieces) {
            const Word st = concat(p.sigma, m.tau0);
            if (p.kind == TestPiece::Kind::cylinder) {
                CHECK(p.mass == ex()->p0() * weight(st, ow) * weight(concat(p.rho, m.rho0), iw));
                CHECK(p.mass == cylinder_mass(ex(), st, concat(p.rho, m.rho0)));
            } else {
                CHECK(p.mass == tail_mass(ex(), st));
            }
            CHECK(p.hull.length() == p.diameter);
        }
    }
}

TEST_CASE("separation holds on all fixtures") {
    for (const auto& raw : {fixtures::example_315(), fixtures::fixture_a(), fixtures::fixture_b()}) {
        const auto sys = ValidatedSystem::validate(raw);
        const auto m = find_markers(sys);
        const Rational delta = separation_constant(sys, m);
        for (unsigned k = 1; k <= 3; ++k) {
            const auto b = build_partition(raw, Order(2.0), k);
            const auto pieces = test_family(sys, b, m);
            const auto rep = verify_separation(pieces, delta);
            CHECK(rep.pass);
            CHECK(rep.min_ratio >= delta);
            CHECK(rep.pairs == pieces.size() * (pieces.size() - 1) / 2);
            const auto ser = verify_separation_serial(pieces, delta);
            CHECK(ser.pass == rep.pass);
            CHECK(ser.min_ratio == rep.min_ratio);
        }
    }
}

TEST_CASE("duplicated pieces fail separation with the first pair reported") {
    const auto m = find_markers(ex());
    const auto b = build_partition(ex().system(), Order(2.0), 1);
    auto pieces = test_family(ex(), b, m);
    pieces.push_back(pieces[2]);
    const auto rep = verify_separation(pieces, m.delta);
    CHECK_FALSE(rep.pass);
    REQUIRE(rep.violation);
    CHECK(rep.violation->first == 2);
    CHECK(rep.violation->second == pieces.size() - 1);
    const auto ser = verify_separation_serial(pieces, m.delta);
    CHECK(ser.violation == rep.violation);
    CHECK(rep.min_ratio == 0);
}

TEST_CASE("energy band and mass constant") {
    for (const auto& raw : {fixtures::example_315(), fixtures::fixture_a(), fixtures::fixture_b()}) {
        const auto sys = ValidatedSystem::validate(raw);
        const auto m = find_markers(sys);
        for (unsigned k = 1; k <= 4; ++k) {
            CAPTURE(k);
            const auto b = build_partition(raw, Order(2.0), k);
            const auto pieces = test_family(sys, b, m);
            const auto e = energy_bounds(sys, b, m, pieces);
            CHECK(e.band_holds());
            CHECK(e.mass_holds());
            CHECK(e.boundary_comparisons == 0);
            CHECK(e.total_mass <= 1);
            CHECK(e.min_energy > 0);
            CHECK(e.min_energy <= e.max_energy);
        }
    }
}

TEST_CASE("energy constants on the two-map example") {
    const auto m = find_markers(ex());
    const auto b = build_partition(ex().system(), Order(2.0), 1);
    const auto e = energy_bounds(ex(), b, m, test_family(ex(), b, m));
    // p_tau = 1/9, s_tau = 1/16, t_rho = 1/4, c_rho = 1/64, |C| = 5/21
    const Rational c = Rational(1, 16 * 64) * Rational(5, 21);
    CHECK(e.H1.power() == Rational(1, 3 * 9 * 4) * c * c);
    CHECK(e.H3.power() == Rational(1, 9 * 256));
    CHECK(e.H2.power() == Rational(1, 128));
    CHECK(e.H4.power() == Rational(1, 48));
    CHECK(e.d4 == Rational(1, 108));
}

TEST_CASE("upper bound matches the oracle closed form") {
    const auto b = build_partition(ex().system(), Order(2.0), 1);
    const auto ub = upper_bound(ex(), b);
    REQUIRE(ub.exact);
    const Rational C = Rational(5, 21);
    const Rational expect = Rational(1, 3) * C * C * Rational(11, 12288) + Rational(1, 576);
    CHECK(*ub.exact == expect);
    CHECK(ub.value == doctest::Approx(expect.get_d()));
    CHECK(ub.codebook.size() == b.phi);
    CHECK(std::is_sorted(ub.codebook.begin(), ub.codebook.end()));
}

TEST_CASE("upper and lower sums bracket each other") {
    for (const auto& raw : {fixtures::example_315(), fixtures::fixture_a()}) {
        const auto sys = ValidatedSystem::validate(raw);
        const Rational C = sys.hull_C().length(), K = sys.hull_K().length();
        const Rational a = sys->p0() * C * C, c = K * K;
        const Rational lo = std::min(a, c), hi = std::max(a, c);
        Rational prev = 2;
        for (unsigned k = 1; k <= 5; ++k) {
            const auto b = build_partition(raw, Order(2.0), k);
            const auto ub = upper_bound(sys, b);
            const auto lb = lower_sum(sys, b);
            REQUIRE(ub.exact);
            REQUIRE(lb.exact);
            CHECK(*ub.exact <= hi * *lb.exact);
            CHECK(*ub.exact >= lo * *lb.exact);
            CHECK(*ub.exact < prev);
            prev = *ub.exact;
        }
    }
}

TEST_CASE("inexact orders fall back to floating sums") {
    const auto b = build_partition(ex().system(), Order(1.3), 2);
    const auto ub = upper_bound(ex(), b);
    CHECK_FALSE(ub.exact);
    CHECK(ub.value > 0);
    const auto exact = upper_bound(ex(), build_partition(ex().system(), Order::parse("13/10"), 2));
    CHECK_FALSE(exact.exact);
    CHECK(static_cast<double>(exact.value) == doctest::Approx(static_cast<double>(ub.value)).epsilon(1e-12));
}

TEST_CASE("codebook distortion stays below the bound") {
    const auto xs = sample(sampler_model(ex()), 11, 50'000);
    for (unsigned k = 1; k <= 3; ++k) {
        const auto ub = upper_bound(ex(), build_partition(ex().system(), Order(2.0), k));
        const auto est = eval_codebook(xs, Codebook(ub.codebook), 2.0, 1);
        CHECK(est.power <= static_cast<double>(ub.value) + 3 * est.se_power);
    }
}
