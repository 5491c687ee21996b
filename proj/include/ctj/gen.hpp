#pragma once

#include "ctj/instance.hpp"

#include <cstdint>

namespace ctj {

// n seeded integer points on the [0,1000]^2 grid, complete graph with exact
// L1 costs (integral, triangle inequality holds exactly), T = first t_size
// ids. with_penalties adds deterministic penalties (some zero, some halves)
// to the non-terminal nodes.
Instance gen_random_metric(int n, int t_size, uint64_t seed, bool with_penalties = false);

// The complete graph on four nodes, unit costs, T = V.
Instance gen_k4();

// Even cycle on t_size nodes, T = V, root 0; the two edges at the root cost
// 1/2, all others cost 1.
Instance gen_tight_cycle(int t_size);

}  // namespace ctj
