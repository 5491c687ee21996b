#include "ctj/oracle.hpp"

#include "ctj/cutscan.hpp"
#include "ctj/graph.hpp"
#include "ctj/lp.hpp"

#include <algorithm>
#include <stdexcept>

namespace ctj {

namespace {

// Spanning-tree enumeration by recursive edge inclusion/exclusion. Prunes
// branches that cannot span anymore and include-branches that already cost
// at least the incumbent (costs are nonnegative).
struct TreeEnum {
    const Instance& inst;
    int n, m;
    std::vector<int> chosen;
    std::vector<int> deg;
    int parity_mismatch;  // nodes whose current degree parity disagrees with T
    Rat run_cost;
    bool have_best = false;
    Rat best_cost;
    std::vector<int> best_tree;

    explicit TreeEnum(const Instance& inst_)
        : inst(inst_), n(inst_.n), m(static_cast<int>(inst_.edges.size())), deg(inst_.n, 0),
          parity_mismatch(static_cast<int>(inst_.terminals.size())), run_cost(0) {}

    void toggle_node(int v, int delta) {
        bool was_ok = (deg[v] % 2 == 1) == inst.is_terminal(v);
        deg[v] += delta;
        bool now_ok = (deg[v] % 2 == 1) == inst.is_terminal(v);
        parity_mismatch += (was_ok ? 1 : 0) - (now_ok ? 1 : 0);
    }

    bool can_span(const Dsu& partial, int next_edge) {
        Dsu probe = partial;
        int comps = 0;
        for (int v = 0; v < n; ++v)
            if (probe.find(v) == v) ++comps;
        for (int e = next_edge; e < m && comps > 1; ++e)
            if (probe.unite(inst.edges[e].u, inst.edges[e].v)) --comps;
        return comps == 1;
    }

    void rec(int e, Dsu dsu) {
        if (static_cast<int>(chosen.size()) == n - 1) {
            if (parity_mismatch == 0 && (!have_best || run_cost < best_cost)) {
                have_best = true;
                best_cost = run_cost;
                best_tree = chosen;
            }
            return;
        }
        if (e == m || static_cast<int>(chosen.size()) + (m - e) < n - 1) return;
        const Edge& ed = inst.edges[e];
        // include
        if (dsu.find(ed.u) != dsu.find(ed.v) && (!have_best || run_cost + ed.cost < best_cost)) {
            Dsu next = dsu;
            next.unite(ed.u, ed.v);
            chosen.push_back(e);
            toggle_node(ed.u, 1);
            toggle_node(ed.v, 1);
            run_cost += ed.cost;
            rec(e + 1, std::move(next));
            run_cost -= ed.cost;
            toggle_node(ed.u, -1);
            toggle_node(ed.v, -1);
            chosen.pop_back();
        }
        // exclude
        if (can_span(dsu, e + 1)) rec(e + 1, std::move(dsu));
    }
};

}  // namespace

std::pair<EdgeMultiset, Rat> brute_force_opt(const Instance& inst, const OracleLimits& lim) {
    if (inst.terminals.empty())
        throw std::invalid_argument("brute_force_opt: T must be nonempty");
    if (inst.n > lim.max_nodes_tree_enum)
        throw std::invalid_argument("brute_force_opt: instance over tree enumeration limit");
    Instance metric = inst.is_metric ? inst : metric_completion(inst);
    TreeEnum en(metric);
    en.rec(0, Dsu(metric.n));
    if (!en.have_best)
        throw std::logic_error("brute_force_opt: no spanning tree matches T parity");
    return {multiset_of(metric, en.best_tree), en.best_cost};
}

namespace {

struct PairEnum {
    const Instance& inst;
    const std::vector<int>& d;
    std::vector<char> used;
    std::vector<std::pair<int, int>> current, best;
    Rat run_cost;
    bool have_best = false;
    Rat best_cost;

    PairEnum(const Instance& i, const std::vector<int>& d_) : inst(i), d(d_), used(d_.size(), 0), run_cost(0) {}

    void rec() {
        size_t first = 0;
        while (first < used.size() && used[first]) ++first;
        if (first == used.size()) {
            if (!have_best || run_cost < best_cost) {
                have_best = true;
                best_cost = run_cost;
                best = current;
            }
            return;
        }
        used[first] = 1;
        for (size_t j = first + 1; j < used.size(); ++j) {
            if (used[j]) continue;
            int e = inst.edge_index(d[first], d[j]);
            if (e < 0) throw std::invalid_argument("brute_force_min_djoin: missing direct edge");
            used[j] = 1;
            current.emplace_back(d[first], d[j]);
            run_cost += inst.edges[e].cost;
            if (!have_best || run_cost < best_cost) rec();
            run_cost -= inst.edges[e].cost;
            current.pop_back();
            used[j] = 0;
        }
        used[first] = 0;
    }
};

}  // namespace

std::pair<EdgeMultiset, Rat> brute_force_min_djoin(const Instance& inst,
                                                   const std::vector<int>& d,
                                                   const OracleLimits& lim) {
    if (d.size() % 2 != 0) throw std::invalid_argument("brute_force_min_djoin: odd |D|");
    if (static_cast<int>(d.size()) > lim.max_d_matching_enum)
        throw std::invalid_argument("brute_force_min_djoin: |D| over enumeration limit");
    EdgeMultiset out(inst.edges.size());
    if (d.empty()) return {out, Rat(0)};
    PairEnum en(inst, d);
    en.rec();
    for (auto [u, v] : en.best) out.mult[inst.edge_index(u, v)] += 1;
    return {out, en.best_cost};
}

std::vector<ViolatedCut> enumerate_violated_cuts(const Instance& inst, const FractionalPoint& x,
                                                 const OracleLimits& lim) {
    if (inst.n > lim.max_nodes_cut_enum)
        throw std::invalid_argument("enumerate_violated_cuts: over cut enumeration limit");
    std::vector<ViolatedCut> out;
    uint64_t all = inst.n == 64 ? ~uint64_t{0} : (uint64_t{1} << inst.n) - 1;
    uint64_t tmask = inst.terminal_mask();
    Rat total = x.total();
    if (total != inst.n - 1) {
        Rat viol = total - (inst.n - 1);
        out.push_back(ViolatedCut{all, CutFamily::TreeTotal, viol < 0 ? -viol : viol});
    }
    scan_subsets(inst, x, all, [&](uint64_t mask, const Rat& cut, const Rat& inside) {
        if (mask == all) return;
        int size = popcount64(mask);
        if (size >= 2) {
            Rat bound(size - 1);
            if (inside > bound)
                out.push_back(ViolatedCut{mask, CutFamily::Subtour, inside - bound});
        }
        if (popcount64(mask & tmask) % 2 == 0 && cut < 2)
            out.push_back(ViolatedCut{mask, CutFamily::TEven, Rat(2) - cut});
    });
    std::sort(out.begin(), out.end(), [](const ViolatedCut& a, const ViolatedCut& b) {
        if (a.violation != b.violation) return a.violation > b.violation;
        if (a.mask != b.mask) return a.mask < b.mask;
        return a.family < b.family;
    });
    return out;
}

Rat brute_force_lp1(const Instance& inst, const OracleLimits& lim) {
    if (inst.n > lim.max_nodes_full_lp)
        throw std::invalid_argument("brute_force_lp1: instance over full-LP limit");
    if (inst.terminals.empty()) throw std::invalid_argument("brute_force_lp1: T must be nonempty");
    const int m = static_cast<int>(inst.edges.size());
    LpModel model;
    model.num_vars = m;
    for (const Edge& e : inst.edges) model.objective.push_back(e.cost);
    {
        LpRow total;
        for (int e = 0; e < m; ++e) total.coef.emplace_back(e, Rat(1));
        total.rel = Rel::EQ;
        total.rhs = inst.n - 1;
        model.rows.push_back(std::move(total));
    }
    uint64_t all = (uint64_t{1} << inst.n) - 1;
    uint64_t tmask = inst.terminal_mask();
    for (uint64_t mask = 1; mask < all; ++mask) {
        int size = popcount64(mask);
        if (size >= 2) {
            LpRow sub;
            for (int e = 0; e < m; ++e)
                if ((mask >> inst.edges[e].u & 1) && (mask >> inst.edges[e].v & 1))
                    sub.coef.emplace_back(e, Rat(1));
            sub.rel = Rel::LE;
            sub.rhs = size - 1;
            model.rows.push_back(std::move(sub));
        }
        // complements give the same cut; keep sets avoiding node 0
        if ((mask & 1) == 0 && popcount64(mask & tmask) % 2 == 0) {
            LpRow cut;
            for (int e = 0; e < m; ++e)
                if (((mask >> inst.edges[e].u) & 1) != ((mask >> inst.edges[e].v) & 1))
                    cut.coef.emplace_back(e, Rat(1));
            cut.rel = Rel::GE;
            cut.rhs = 2;
            model.rows.push_back(std::move(cut));
        }
    }
    SimplexResult res = simplex_solve(model);
    if (res.status != LpStatus::Optimal)
        throw std::logic_error("brute_force_lp1: full LP did not solve to optimality");
    return res.value;
}

}  // namespace ctj
