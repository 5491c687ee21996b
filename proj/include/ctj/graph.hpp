#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace ctj {

struct Dsu {
    std::vector<int> parent, size;

    explicit Dsu(int n) : parent(n), size(n, 1) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }

    int find(int v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    }

    // Returns false if a and b were already in the same component.
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
        return true;
    }
};

inline int popcount64(uint64_t mask) { return std::popcount(mask); }

inline bool subset_of(uint64_t a, uint64_t b) { return (a & ~b) == 0; }

// R and S cross if R∩S, R∖S and S∖R are nonempty and R∪S is a proper
// subset of the ground set.
inline bool sets_cross(uint64_t r, uint64_t s, uint64_t ground) {
    return (r & s) != 0 && (r & ~s) != 0 && (s & ~r) != 0 && (r | s) != ground;
}

inline std::vector<int> mask_nodes(uint64_t mask) {
    std::vector<int> out;
    for (int v = 0; mask != 0; ++v, mask >>= 1)
        if (mask & 1) out.push_back(v);
    return out;
}

inline uint64_t node_mask(const std::vector<int>& nodes) {
    uint64_t m = 0;
    for (int v : nodes) m |= uint64_t{1} << v;
    return m;
}

}  // namespace ctj
