#include "ctj/gen.hpp"

#include <cstdlib>
#include <random>
#include <stdexcept>

namespace ctj {

Instance gen_random_metric(int n, int t_size, uint64_t seed, bool with_penalties) {
    if (n < 2) throw std::invalid_argument("gen_random_metric: need n >= 2");
    if (t_size < 2 || t_size > n || t_size % 2 != 0)
        throw std::invalid_argument("gen_random_metric: t_size must be even, 2 <= t <= n");
    std::mt19937_64 rng(seed);
    std::vector<std::pair<long, long>> pt(n);
    for (int v = 0; v < n; ++v) {
        pt[v].first = static_cast<long>(rng() % 1001);
        pt[v].second = static_cast<long>(rng() % 1001);
    }
    Instance inst;
    inst.n = n;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            long d = std::labs(pt[u].first - pt[v].first) + std::labs(pt[u].second - pt[v].second);
            inst.edges.push_back(Edge{u, v, Rat(d)});
        }
    for (int v = 0; v < t_size; ++v) inst.terminals.push_back(v);
    inst.penalty.assign(n, Rat(0));
    if (with_penalties) {
        for (int v = t_size; v < n; ++v) {
            uint64_t r = rng() % 8;
            if (r < 2) continue;  // leave a fair share of zero penalties
            inst.penalty[v] = rat(static_cast<long>(rng() % 1200), r % 2 == 0 ? 2 : 1);
            inst.has_penalties = true;
        }
    }
    inst.finish();
    return inst;
}

Instance gen_k4() {
    Instance inst;
    inst.n = 4;
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) inst.edges.push_back(Edge{u, v, Rat(1)});
    inst.terminals = {0, 1, 2, 3};
    inst.finish();
    return inst;
}

Instance gen_tight_cycle(int t_size) {
    if (t_size < 4 || t_size % 2 != 0)
        throw std::invalid_argument("gen_tight_cycle: size must be even and >= 4");
    Instance inst;
    inst.n = t_size;
    for (int v = 0; v + 1 < t_size; ++v)
        inst.edges.push_back(Edge{v, v + 1, v == 0 ? rat(1, 2) : Rat(1)});
    inst.edges.push_back(Edge{0, t_size - 1, rat(1, 2)});
    for (int v = 0; v < t_size; ++v) inst.terminals.push_back(v);
    inst.root = 0;
    inst.finish();
    return inst;
}

}  // namespace ctj
