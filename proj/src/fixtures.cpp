#include "ismq/fixtures.hpp"

namespace ismq::fixtures {

namespace {

Rational q(long a, long b = 1) {
    Rational x(a, b);
    x.canonicalize();
    return x;
}

Similitude1D sim(Rational s, Rational o) { return Similitude1D(std::move(s), std::move(o)); }

std::vector<Similitude1D> outer_315() { return {sim(q(1, 4), 0), sim(q(1, 4), q(3, 4))}; }
std::vector<Similitude1D> inner_315() { return {sim(q(1, 8), q(1, 3)), sim(q(1, 8), q(13, 24))}; }

}  // namespace

CondensationSystem example_315() { return example_315({q(1, 3), q(1, 3), q(1, 3)}, {q(1, 2), q(1, 2)}); }

CondensationSystem example_315(std::vector<Rational> outer_probs, std::vector<Rational> inner_probs) {
    return CondensationSystem(outer_315(), std::move(outer_probs), inner_315(), std::move(inner_probs),
                              Interval::open(0, 1));
}

CondensationSystem fixture_a() {
    return CondensationSystem({sim(q(1, 4), 0), sim(q(1, 5), q(4, 5))}, {q(1, 4), q(1, 2), q(1, 4)},
                              {sim(q(1, 8), q(7, 24)), sim(q(1, 6), q(5, 9))}, {q(1, 3), q(2, 3)},
                              Interval::open(0, 1));
}

CondensationSystem fixture_b() {
    return CondensationSystem({sim(q(1, 5), 0), sim(q(-1, 5), q(3, 5)), sim(q(1, 4), q(3, 4))},
                              {q(1, 5), q(2, 5), q(1, 5), q(1, 5)},
                              {sim(q(1, 4), q(3, 16)), sim(q(1, 3), q(7, 30))}, {q(1, 4), q(3, 4)},
                              Interval::open(0, 1));
}

CondensationSystem tie_fixture() { return example_315({q(3, 4), q(1, 8), q(1, 8)}, {q(1, 2), q(1, 2)}); }

CondensationSystem no_crossing_fixture() {
    return CondensationSystem({sim(q(1, 8), 0), sim(q(1, 8), q(7, 8))}, {q(1, 3), q(1, 3), q(1, 3)}, inner_315(),
                              {q(1, 2), q(1, 2)}, Interval::open(0, 1));
}

CondensationSystem bad_open_set() { return example_315().with_open_set(Interval::open(0, q(1, 2))); }

SelfSimilar cantor_control() { return {{sim(q(1, 3), 0), sim(q(1, 3), q(2, 3))}, {q(1, 2), q(1, 2)}}; }

SelfSimilar uniform_control() { return {{sim(q(1, 2), 0), sim(q(1, 2), q(1, 2))}, {q(1, 2), q(1, 2)}}; }

}  // namespace ismq::fixtures
