#pragma once

#include "ismq/system.hpp"

#include <vector>

namespace ismq::fixtures {

// f_1 = x/4, f_2 = x/4 + 3/4; g_1 = x/8 + 1/3, g_2 = x/8 + 13/24; U = (0, 1).
// Weights default to p = (1/3, 1/3, 1/3) (p_0 first) and t = (1/2, 1/2).
CondensationSystem example_315();
CondensationSystem example_315(std::vector<Rational> outer_probs, std::vector<Rational> inner_probs);

// Non-uniform ratios and weights: f_1 = x/4, f_2 = x/5 + 4/5; g_1 = x/8 + 7/24,
// g_2 = x/6 + 5/9; p = (1/4, 1/2, 1/4), t = (1/3, 2/3).
CondensationSystem fixture_a();

// Three outer maps, one reflecting: f_1 = x/5, f_2 = -x/5 + 3/5, f_3 = x/4 + 3/4;
// g_1 = x/4 + 3/16, g_2 = x/3 + 7/30; p = (1/5, 2/5, 1/5, 1/5), t = (1/4, 3/4).
CondensationSystem fixture_b();

// The two-map example maps with p = (3/4, 1/8, 1/8): s_2 = t_2 = 1/3 exactly.
CondensationSystem tie_fixture();

// Outer maps x/8 and x/8 + 7/8 with p = (1/3, 1/3, 1/3): s_r > t_r for every r.
CondensationSystem no_crossing_fixture();

// The two-map example with U = (0, 1/2), which breaks the first containment condition.
CondensationSystem bad_open_set();

struct SelfSimilar {
    std::vector<Similitude1D> maps;
    std::vector<Rational> probs;
};

// x/3 and x/3 + 2/3 with weights (1/2, 1/2)
SelfSimilar cantor_control();

// x/2 and x/2 + 1/2 with weights (1/2, 1/2): Lebesgue measure on [0, 1]
SelfSimilar uniform_control();

}  // namespace ismq::fixtures
