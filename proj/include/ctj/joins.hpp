#pragma once

#include "ctj/instance.hpp"

#include <span>
#include <utility>
#include <vector>

namespace ctj {

struct Pairing {
    std::vector<std::pair<int, int>> pairs;  // partitions D, each (u < v)
    Rat cost;
};

// Exact minimum-cost perfect matching on the nodes of D under direct metric
// edge costs, by dynamic programming over subsets of D. Deterministic: among
// optimal pairings the lexicographically smallest is returned.
Pairing min_weight_perfect_matching(const Instance& inst, const std::vector<int>& d_nodes,
                                    int cap = 20);

// The matching edges as a D-join; on a metric completion direct edges are
// shortest paths, so this realizes the L.P.2 optimum.
EdgeMultiset min_cost_djoin(const Instance& inst, const std::vector<int>& d_nodes, int cap = 20);

// Multiset union J ∪ M (an edge in both gets multiplicity 2).
EdgeMultiset combine(const Instance& inst, std::span<const int> tree_edges,
                     const EdgeMultiset& m);

}  // namespace ctj
