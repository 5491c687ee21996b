#pragma once

#include "ctj/instance.hpp"

#include <bit>
#include <cstdint>
#include <vector>

namespace ctj {

// Visits every nonempty subset S of `allowed` in Gray-code order, maintaining
// x(δ(S)) and x(E(S)) incrementally (one node toggle per step). fn receives
// (mask, cut, inside); the references stay owned by the scanner.
template <typename F>
void scan_subsets(const Instance& inst, const FractionalPoint& x, uint64_t allowed, F&& fn) {
    std::vector<int> bits;
    for (int v = 0; v < inst.n; ++v)
        if (allowed >> v & 1) bits.push_back(v);
    const int k = static_cast<int>(bits.size());
    if (k == 0) return;

    std::vector<std::vector<std::pair<int, int>>> adj(inst.n);  // (other endpoint, edge id)
    for (size_t e = 0; e < inst.edges.size(); ++e) {
        adj[inst.edges[e].u].emplace_back(inst.edges[e].v, static_cast<int>(e));
        adj[inst.edges[e].v].emplace_back(inst.edges[e].u, static_cast<int>(e));
    }

    uint64_t mask = 0;
    Rat cut = 0, inside = 0;
    const uint64_t steps = uint64_t{1} << k;
    for (uint64_t i = 1; i < steps; ++i) {
        int v = bits[std::countr_zero(i)];
        bool adding = (mask >> v & 1) == 0;
        for (auto [w, e] : adj[v]) {
            const Rat& xe = x.value[e];
            if (xe == 0) continue;
            bool w_in = (mask >> w & 1) != 0;
            if (adding) {
                if (w_in) { cut -= xe; inside += xe; }
                else cut += xe;
            } else {
                if (w_in) { cut += xe; inside -= xe; }
                else cut -= xe;
            }
        }
        mask ^= uint64_t{1} << v;
        fn(mask, cut, inside);
    }
}

}  // namespace ctj
