#pragma once

#include "ctj/instance.hpp"
#include "ctj/oracle_limits.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace ctj {

// Exact optimum by enumerating every spanning tree of the metric completion
// and keeping the cheapest one whose odd-degree set is exactly T.
std::pair<EdgeMultiset, Rat> brute_force_opt(const Instance& inst, const OracleLimits& lim = {});

// Exact minimum-cost D-join by enumerating all perfect pairings of D, costed
// with direct metric edges.
std::pair<EdgeMultiset, Rat> brute_force_min_djoin(const Instance& inst,
                                                   const std::vector<int>& d,
                                                   const OracleLimits& lim = {});

enum class CutFamily { Subtour, TEven, TreeTotal };

struct ViolatedCut {
    uint64_t mask;
    CutFamily family;
    Rat violation;
};

// Exhaustive check of every L.P.1 constraint against x. Empty result means
// x is feasible.
std::vector<ViolatedCut> enumerate_violated_cuts(const Instance& inst, const FractionalPoint& x,
                                                 const OracleLimits& lim = {});

// L.P.1 with the complete constraint set written out, solved exactly.
Rat brute_force_lp1(const Instance& inst, const OracleLimits& lim = {});

}  // namespace ctj
