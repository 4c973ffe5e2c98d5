#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ismq/error.hpp"
#include "ismq/fixtures.hpp"
#include "ismq/report.hpp"

using namespace ismq;

TEST_CASE("systems round-trip through JSON") {
    for (const auto& sys : {fixtures::example_315(), fixtures::fixture_a(), fixtures::fixture_b()}) {
        const Json j = system_to_json(sys);
        const auto back = system_from_json(Json::parse(j.dump()));
        CHECK(back.outer() == sys.outer());
        CHECK(back.inner() == sys.inner());
        CHECK(back.outer_probs() == sys.outer_probs());
        CHECK(back.inner_probs() == sys.inner_probs());
        CHECK(back.open_set() == sys.open_set());
        CHECK(system_to_json(back).dump() == j.dump());
    }
}

TEST_CASE("floating literals are rejected") {
    Json j = system_to_json(fixtures::example_315());
    j["outer_probs"][0] = 0.3333;
    try {
        system_from_json(j);
        FAIL("expected a rejection");
    } catch (const Error& e) {
        CHECK(e.code() == "bad_rational");
    }
    Json k = system_to_json(fixtures::example_315());
    k["inner_maps"][0]["offset"] = "0.5";
    CHECK_THROWS_AS(system_from_json(k), Error);
    Json m = system_to_json(fixtures::example_315());
    m.erase("open_set");
    CHECK_THROWS_AS(system_from_json(m), Error);
}

TEST_CASE("integers are accepted") {
    Json j = system_to_json(fixtures::example_315());
    j["open_set"]["lo"] = 0;
    j["open_set"]["hi"] = 1;
    CHECK(system_from_json(j).open_set() == Interval::open(0, 1));
}

TEST_CASE("rational parsing") {
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational("-2") == -2);
    CHECK_THROWS_AS(parse_rational("1e3"), Error);
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational(""), Error);
    CHECK(rational_json(Rational(1, 3))["exact"] == "1/3");
}

TEST_CASE("formatting") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(2.0) == "2");
    const std::vector<double> v{0.5, 0.25};
    CHECK(values_csv("x", v) == "x\n0.5\n0.25\n");
    const auto e = error_json("bad_k", "k must be at least 1");
    CHECK(e["error"]["code"] == "bad_k");
}

TEST_CASE("partition CSV header") {
    const std::vector<PartitionRow> rows{{1, 4, 12, 2, 2, 1.5L}};
    const auto csv = partition_csv(rows);
    CHECK(csv.rfind("k,N_kr,phi_kr,l1,l2,I_k_s_r\n", 0) == 0);
    CHECK(csv.find("1,4,12,2,2,") != std::string::npos);
}
