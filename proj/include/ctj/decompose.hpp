#pragma once

#include "ctj/instance.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ctj {

// x* written exactly as a convex combination of spanning-tree incidence
// vectors: sum of lambdas is 1 and the weighted edge incidences reproduce
// x* edge by edge, no tolerance.
struct SpanningTreeDecomposition {
    struct Term {
        Rat lambda;
        std::vector<int> edges;  // sorted edge ids
    };
    std::vector<Term> terms;
};

struct DecomposeError : std::runtime_error {
    // Separating dual weights: every spanning tree has weight >= 1 but
    // w · x* < 1, certifying that x* is outside the spanning tree polytope.
    std::vector<Rat> certificate;
    Rat master_value;
    DecomposeError(std::string msg, std::vector<Rat> cert, Rat value)
        : std::runtime_error(std::move(msg)), certificate(std::move(cert)),
          master_value(std::move(value)) {}
};

// Column generation: restricted master max Σλ s.t. Σ λ_J χ(J) <= x*, priced
// by minimum-weight spanning trees under the master duals, started from a
// minimum-cost spanning tree of the support.
SpanningTreeDecomposition decompose_spanning_trees(const Instance& inst,
                                                   const FractionalPoint& x_star);

bool verify_decomposition(const Instance& inst, const FractionalPoint& x_star,
                          const SpanningTreeDecomposition& d, std::string* diag = nullptr);

// Deterministic in the seed: one 64-bit draw u picks the term whose
// cumulative lambda interval contains u/2^64. Edge e lands in the sample
// with probability exactly x*_e under a uniform draw.
const std::vector<int>& sample_tree(const SpanningTreeDecomposition& d, uint64_t seed);

std::string format_decomposition(const Instance& inst, const SpanningTreeDecomposition& d);

}  // namespace ctj
