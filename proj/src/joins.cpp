#include "ctj/joins.hpp"

#include <bit>
#include <stdexcept>

namespace ctj {

Pairing min_weight_perfect_matching(const Instance& inst, const std::vector<int>& d_nodes,
                                    int cap) {
    const int k = static_cast<int>(d_nodes.size());
    if (k % 2 != 0) throw std::invalid_argument("min_weight_perfect_matching: odd |D|");
    if (k > cap)
        throw std::invalid_argument(
            "min_weight_perfect_matching: |D| over the subset-DP cap; reduce the instance "
            "(a general blossom solver is out of scope)");
    Pairing out;
    out.cost = 0;
    if (k == 0) return out;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (inst.edge_index(d_nodes[i], d_nodes[j]) < 0)
                throw std::invalid_argument("min_weight_perfect_matching: missing direct edge");

    const uint32_t full = (uint32_t{1} << k) - 1;
    std::vector<Rat> best(full + 1);
    std::vector<char> reach(full + 1, 0);
    reach[0] = 1;
    // best[mask] = min cost pairing of the D-indices in mask
    for (uint32_t mask = 1; mask <= full; ++mask) {
        int i = std::countr_zero(mask);
        if (std::popcount(mask) % 2 != 0) continue;
        for (int j = i + 1; j < k; ++j) {
            if ((mask >> j & 1) == 0) continue;
            uint32_t rest = mask & ~(uint32_t{1} << i) & ~(uint32_t{1} << j);
            if (!reach[rest]) continue;
            Rat cand = best[rest] + inst.edges[inst.edge_index(d_nodes[i], d_nodes[j])].cost;
            if (!reach[mask] || cand < best[mask]) {
                reach[mask] = 1;
                best[mask] = std::move(cand);
            }
        }
    }
    // reconstruct, preferring the smallest partner on ties
    uint32_t mask = full;
    while (mask != 0) {
        int i = std::countr_zero(mask);
        for (int j = i + 1; j < k; ++j) {
            if ((mask >> j & 1) == 0) continue;
            uint32_t rest = mask & ~(uint32_t{1} << i) & ~(uint32_t{1} << j);
            if (!reach[rest]) continue;
            if (best[rest] + inst.edges[inst.edge_index(d_nodes[i], d_nodes[j])].cost ==
                best[mask]) {
                int u = d_nodes[i], v = d_nodes[j];
                out.pairs.emplace_back(std::min(u, v), std::max(u, v));
                mask = rest;
                break;
            }
        }
    }
    out.cost = best[full];
    return out;
}

EdgeMultiset min_cost_djoin(const Instance& inst, const std::vector<int>& d_nodes, int cap) {
    Pairing p = min_weight_perfect_matching(inst, d_nodes, cap);
    EdgeMultiset m(inst.edges.size());
    for (auto [u, v] : p.pairs) m.mult[inst.edge_index(u, v)] += 1;
    return m;
}

EdgeMultiset combine(const Instance& inst, std::span<const int> tree_edges,
                     const EdgeMultiset& m) {
    EdgeMultiset f = m;
    f.mult.resize(inst.edges.size(), 0);
    for (int e : tree_edges) f.mult[e] += 1;
    return f;
}

}  // namespace ctj
