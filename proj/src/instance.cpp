#include "ctj/instance.hpp"

#include "ctj/graph.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>

namespace ctj {

void Instance::finish() {
    index_.assign(static_cast<size_t>(n) * n, -1);
    for (size_t e = 0; e < edges.size(); ++e) {
        const Edge& ed = edges[e];
        index_[static_cast<size_t>(ed.u) * n + ed.v] = static_cast<int>(e);
        index_[static_cast<size_t>(ed.v) * n + ed.u] = static_cast<int>(e);
    }
    is_terminal_.assign(n, 0);
    for (int t : terminals) is_terminal_[t] = 1;
    if (penalty.empty()) penalty.assign(n, Rat(0));

    is_metric = false;
    if (complete()) {
        bool ok = true;
        for (int u = 0; u < n && ok; ++u)
            for (int v = 0; v < n && ok; ++v)
                for (int w = v + 1; w < n && ok; ++w) {
                    if (u == v || u == w) continue;
                    const Rat& direct = edges[edge_index(v, w)].cost;
                    if (direct > edges[edge_index(v, u)].cost + edges[edge_index(u, w)].cost)
                        ok = false;
                }
        is_metric = ok;
    }
}

int Instance::edge_index(int u, int v) const {
    if (u < 0 || v < 0 || u >= n || v >= n || u == v) return -1;
    return index_[static_cast<size_t>(u) * n + v];
}

bool Instance::complete() const {
    return edges.size() == static_cast<size_t>(n) * (n - 1) / 2;
}

bool Instance::is_terminal(int v) const { return is_terminal_[v] != 0; }

uint64_t Instance::terminal_mask() const {
    assert(n <= 63);
    return node_mask(terminals);
}

int Instance::default_root() const {
    if (root) return *root;
    return terminals.front();
}

Rat Instance::total_edge_cost() const {
    Rat s = 0;
    for (const Edge& e : edges) s += e.cost;
    return s;
}

int EdgeMultiset::total() const {
    int s = 0;
    for (int m : mult) s += m;
    return s;
}

Rat EdgeMultiset::cost(const Instance& inst) const {
    Rat s = 0;
    for (size_t e = 0; e < mult.size(); ++e)
        if (mult[e] != 0) s += mult[e] * inst.edges[e].cost;
    return s;
}

EdgeMultiset multiset_of(const Instance& inst, std::span<const int> edge_ids) {
    EdgeMultiset f(inst.edges.size());
    for (int e : edge_ids) f.mult[e] += 1;
    return f;
}

Rat FractionalPoint::cost(const Instance& inst) const {
    Rat s = 0;
    for (size_t e = 0; e < value.size(); ++e)
        if (value[e] != 0) s += value[e] * inst.edges[e].cost;
    return s;
}

Rat FractionalPoint::total() const {
    Rat s = 0;
    for (const Rat& v : value) s += v;
    return s;
}

namespace {

struct RawLine {
    int line;
    std::vector<std::string> tokens;
};

long parse_int(const std::string& tok, int line, const char* what) {
    size_t pos = 0;
    long value = 0;
    try {
        value = std::stol(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError(line, std::string("malformed ") + what + " '" + tok + "'");
    }
    if (pos != tok.size())
        throw ParseError(line, std::string("malformed ") + what + " '" + tok + "'");
    return value;
}

int parse_node(const std::string& tok, int n, int line) {
    long v = parse_int(tok, line, "node id");
    if (v < 0 || v >= n)
        throw ParseError(line, "node id " + tok + " out of range");
    return static_cast<int>(v);
}

Rat parse_rat_tok(const std::string& tok, int line) {
    try {
        return rat_parse(tok);
    } catch (const std::invalid_argument& ex) {
        throw ParseError(line, ex.what());
    }
}

}  // namespace

Instance parse_instance(const std::string& text) {
    std::vector<RawLine> lines;
    {
        std::istringstream in(text);
        std::string raw;
        int no = 0;
        while (std::getline(in, raw)) {
            ++no;
            if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
            std::istringstream ls(raw);
            RawLine rl{no, {}};
            std::string tok;
            while (ls >> tok) rl.tokens.push_back(tok);
            if (!rl.tokens.empty()) lines.push_back(std::move(rl));
        }
    }

    Instance inst;
    if (lines.empty() || lines.front().tokens[0] != "nodes")
        throw ParseError(lines.empty() ? 1 : lines.front().line, "expected 'nodes <n>' first");
    {
        const RawLine& rl = lines.front();
        if (rl.tokens.size() != 2) throw ParseError(rl.line, "malformed nodes directive");
        long n = parse_int(rl.tokens[1], rl.line, "node count");
        if (n < 1) throw ParseError(rl.line, "node count must be positive");
        inst.n = static_cast<int>(n);
    }

    bool saw_t = false;
    int t_line = 0;
    std::optional<std::pair<int, int>> root_at;  // (node, line)
    std::map<std::pair<int, int>, int> seen_edges;
    std::map<int, int> seen_penalties;
    std::vector<std::pair<int, Rat>> penalties;

    for (size_t i = 1; i < lines.size(); ++i) {
        const RawLine& rl = lines[i];
        const std::string& kind = rl.tokens[0];
        if (kind == "nodes") {
            throw ParseError(rl.line, "duplicate nodes directive");
        } else if (kind == "T") {
            if (saw_t) throw ParseError(rl.line, "duplicate T directive");
            saw_t = true;
            t_line = rl.line;
            if (rl.tokens.size() < 2) throw ParseError(rl.line, "malformed T directive");
            long k = parse_int(rl.tokens[1], rl.line, "terminal count");
            if (k == 0) throw ParseError(rl.line, "empty T");
            if (k % 2 != 0) throw ParseError(rl.line, "odd |T|");
            if (rl.tokens.size() != static_cast<size_t>(k) + 2)
                throw ParseError(rl.line, "T directive lists wrong number of nodes");
            for (long j = 0; j < k; ++j)
                inst.terminals.push_back(parse_node(rl.tokens[2 + j], inst.n, rl.line));
            std::sort(inst.terminals.begin(), inst.terminals.end());
            if (std::adjacent_find(inst.terminals.begin(), inst.terminals.end()) !=
                inst.terminals.end())
                throw ParseError(rl.line, "repeated terminal");
        } else if (kind == "root") {
            if (rl.tokens.size() != 2) throw ParseError(rl.line, "malformed root directive");
            if (root_at) throw ParseError(rl.line, "duplicate root directive");
            root_at = {parse_node(rl.tokens[1], inst.n, rl.line), rl.line};
        } else if (kind == "edge") {
            if (rl.tokens.size() != 4) throw ParseError(rl.line, "malformed edge directive");
            int u = parse_node(rl.tokens[1], inst.n, rl.line);
            int v = parse_node(rl.tokens[2], inst.n, rl.line);
            if (u == v) throw ParseError(rl.line, "self-loop");
            if (u > v) std::swap(u, v);
            Rat c = parse_rat_tok(rl.tokens[3], rl.line);
            if (c < 0) throw ParseError(rl.line, "negative cost");
            if (auto [it, fresh] = seen_edges.try_emplace({u, v}, rl.line); !fresh)
                throw ParseError(rl.line, "duplicate edge " + std::to_string(u) + "-" +
                                              std::to_string(v));
            inst.edges.push_back(Edge{u, v, std::move(c)});
        } else if (kind == "penalty") {
            if (rl.tokens.size() != 3) throw ParseError(rl.line, "malformed penalty directive");
            int v = parse_node(rl.tokens[1], inst.n, rl.line);
            Rat p = parse_rat_tok(rl.tokens[2], rl.line);
            if (p < 0) throw ParseError(rl.line, "negative penalty");
            if (auto [it, fresh] = seen_penalties.try_emplace(v, rl.line); !fresh)
                throw ParseError(rl.line, "duplicate penalty for node " + std::to_string(v));
            penalties.emplace_back(v, std::move(p));
        } else {
            throw ParseError(rl.line, "unknown directive '" + kind + "'");
        }
    }

    if (!saw_t) throw ParseError(lines.back().line, "empty T");
    if (root_at) {
        if (!std::binary_search(inst.terminals.begin(), inst.terminals.end(), root_at->first))
            throw ParseError(root_at->second, "root is not a terminal");
        inst.root = root_at->first;
    }
    inst.penalty.assign(inst.n, Rat(0));
    for (auto& [v, p] : penalties) {
        if (std::binary_search(inst.terminals.begin(), inst.terminals.end(), v))
            throw ParseError(seen_penalties[v], "penalty on terminal " + std::to_string(v));
        inst.penalty[v] = std::move(p);
        inst.has_penalties = true;
    }
    inst.finish();
    return inst;
}

std::string format_instance(const Instance& inst) {
    std::ostringstream out;
    out << "nodes " << inst.n << "\n";
    out << "T " << inst.terminals.size();
    for (int t : inst.terminals) out << ' ' << t;
    out << "\n";
    if (inst.root) out << "root " << *inst.root << "\n";
    for (const Edge& e : inst.edges)
        out << "edge " << e.u << ' ' << e.v << ' ' << rat_str(e.cost) << "\n";
    if (inst.has_penalties)
        for (int v = 0; v < inst.n; ++v)
            if (!inst.is_terminal(v)) out << "penalty " << v << ' ' << rat_str(inst.penalty[v]) << "\n";
    return out.str();
}

Instance metric_completion(const Instance& inst) {
    const int n = inst.n;
    std::vector<std::vector<Rat>> dist(n, std::vector<Rat>(n));
    std::vector<std::vector<char>> has(n, std::vector<char>(n, 0));
    for (int v = 0; v < n; ++v) has[v][v] = 1;
    for (const Edge& e : inst.edges) {
        if (!has[e.u][e.v] || e.cost < dist[e.u][e.v]) {
            dist[e.u][e.v] = dist[e.v][e.u] = e.cost;
            has[e.u][e.v] = has[e.v][e.u] = 1;
        }
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            if (!has[i][k]) continue;
            for (int j = 0; j < n; ++j) {
                if (!has[k][j] || i == j) continue;
                Rat through = dist[i][k] + dist[k][j];
                if (!has[i][j] || through < dist[i][j]) {
                    dist[i][j] = std::move(through);
                    has[i][j] = 1;
                }
            }
        }
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!has[u][v]) throw std::invalid_argument("metric_completion: disconnected input");

    Instance out;
    out.n = n;
    out.terminals = inst.terminals;
    out.penalty = inst.penalty;
    out.has_penalties = inst.has_penalties;
    out.root = inst.root;
    std::vector<std::vector<char>> present(n, std::vector<char>(n, 0));
    for (const Edge& e : inst.edges) {
        out.edges.push_back(Edge{e.u, e.v, dist[e.u][e.v]});
        present[e.u][e.v] = 1;
    }
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!present[u][v]) out.edges.push_back(Edge{u, v, dist[u][v]});
    out.finish();
    assert(out.is_metric);
    return out;
}

std::vector<int> degrees(const Instance& inst, const EdgeMultiset& f) {
    std::vector<int> deg(inst.n, 0);
    for (size_t e = 0; e < f.mult.size(); ++e) {
        deg[inst.edges[e].u] += f.mult[e];
        deg[inst.edges[e].v] += f.mult[e];
    }
    return deg;
}

TJoinReport validate_connected_tjoin(const Instance& inst, const EdgeMultiset& f) {
    TJoinReport rep;
    Dsu dsu(inst.n);
    int comps = inst.n;
    for (size_t e = 0; e < f.mult.size(); ++e)
        if (f.mult[e] > 0 && dsu.unite(inst.edges[e].u, inst.edges[e].v)) --comps;
    rep.connected = comps == 1;
    rep.parity_ok = true;
    std::vector<int> deg = degrees(inst, f);
    for (int v = 0; v < inst.n; ++v)
        if ((deg[v] % 2 == 1) != inst.is_terminal(v)) rep.parity_ok = false;
    rep.cost = f.cost(inst);
    return rep;
}

std::vector<int> wrong_degree_set(const Instance& inst, const EdgeMultiset& f) {
    std::vector<int> deg = degrees(inst, f);
    std::vector<int> d;
    for (int v = 0; v < inst.n; ++v) {
        bool odd = deg[v] % 2 == 1;
        if (inst.is_terminal(v) ? !odd : odd) d.push_back(v);
    }
    return d;
}

std::vector<int> wrong_degree_set(const Instance& inst, std::span<const int> tree_edges) {
    return wrong_degree_set(inst, multiset_of(inst, tree_edges));
}

namespace {

// Any cycle in the support multigraph, as a node sequence v1..vk with edges
// between consecutive nodes and vk v1. A doubled edge is the cycle u,v.
std::vector<int> find_cycle(const Instance& inst, const std::vector<int>& mult) {
    for (size_t e = 0; e < mult.size(); ++e)
        if (mult[e] >= 2) return {inst.edges[e].u, inst.edges[e].v};

    std::vector<std::vector<std::pair<int, int>>> adj(inst.n);  // (neighbor, edge id)
    for (size_t e = 0; e < mult.size(); ++e)
        if (mult[e] == 1) {
            adj[inst.edges[e].u].emplace_back(inst.edges[e].v, static_cast<int>(e));
            adj[inst.edges[e].v].emplace_back(inst.edges[e].u, static_cast<int>(e));
        }
    std::vector<int> state(inst.n, 0), parent_edge(inst.n, -1), parent(inst.n, -1);
    for (int start = 0; start < inst.n; ++start) {
        if (state[start] != 0) continue;
        std::vector<int> stack = {start};
        state[start] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (auto [w, e] : adj[v]) {
                if (e == parent_edge[v]) continue;
                if (state[w] != 0) {
                    // Walk both ancestries to the meeting point.
                    std::vector<int> path_v = {v};
                    for (int x = v; parent[x] != -1; x = parent[x]) path_v.push_back(parent[x]);
                    std::vector<int> path_w = {w};
                    for (int x = w; parent[x] != -1; x = parent[x]) path_w.push_back(parent[x]);
                    auto on_v = [&](int node) {
                        return std::find(path_v.begin(), path_v.end(), node) != path_v.end();
                    };
                    int meet = -1;
                    for (int node : path_w)
                        if (on_v(node)) { meet = node; break; }
                    std::vector<int> cycle;
                    for (int x : path_v) { cycle.push_back(x); if (x == meet) break; }
                    std::vector<int> tail;
                    for (int x : path_w) { if (x == meet) break; tail.push_back(x); }
                    std::reverse(tail.begin(), tail.end());
                    cycle.insert(cycle.end(), tail.begin(), tail.end());
                    return cycle;
                }
                state[w] = 1;
                parent[w] = v;
                parent_edge[w] = e;
                stack.push_back(w);
            }
        }
    }
    return {};
}

}  // namespace

std::vector<int> shortcut_to_tree(const Instance& inst, const EdgeMultiset& f) {
    if (!inst.is_metric)
        throw std::invalid_argument("shortcut_to_tree: instance is not metric");
    if (inst.terminals.empty())
        throw std::invalid_argument("shortcut_to_tree: T must be nonempty");
    TJoinReport rep = validate_connected_tjoin(inst, f);
    if (!rep.ok())
        throw std::invalid_argument("shortcut_to_tree: input is not a connected T-join");

    std::vector<int> mult = f.mult;
    int total = 0;
    for (int m : mult) total += m;

    while (total > inst.n - 1) {
        std::vector<int> cycle = find_cycle(inst, mult);
        if (cycle.empty())
            throw std::logic_error("shortcut_to_tree: no cycle despite excess edges");
        const int k = static_cast<int>(cycle.size());
        auto cycle_margin = [&](int a, int b) {
            // multiplicity of (a,b) not consumed by the cycle itself
            int uses = 0;
            for (int i = 0; i < k; ++i) {
                int x = cycle[i], y = cycle[(i + 1) % k];
                if ((x == a && y == b) || (x == b && y == a)) ++uses;
            }
            return mult[inst.edge_index(a, b)] - uses;
        };
        int pos = -1, attach_u = -1;
        for (int i = 0; i < k && pos < 0; ++i) {
            int vi = cycle[i];
            for (size_t e = 0; e < mult.size(); ++e) {
                if (mult[e] == 0) continue;
                const Edge& ed = inst.edges[e];
                if (ed.u != vi && ed.v != vi) continue;
                int other = ed.u == vi ? ed.v : ed.u;
                int margin = cycle_margin(vi, other);
                if (margin > 0) { pos = i; attach_u = other; break; }
            }
        }
        if (pos < 0)
            throw std::logic_error("shortcut_to_tree: no attachment edge found");
        int vi = cycle[pos], vnext = cycle[(pos + 1) % k];
        mult[inst.edge_index(attach_u, vi)] -= 1;
        mult[inst.edge_index(vi, vnext)] -= 1;
        total -= 2;
        if (attach_u != vnext) {
            mult[inst.edge_index(attach_u, vnext)] += 1;
            total += 1;
        }
    }

    std::vector<int> tree;
    for (size_t e = 0; e < mult.size(); ++e) {
        if (mult[e] >= 2) throw std::logic_error("shortcut_to_tree: leftover multi-edge");
        if (mult[e] == 1) tree.push_back(static_cast<int>(e));
    }
    EdgeMultiset out = multiset_of(inst, tree);
    TJoinReport check = validate_connected_tjoin(inst, out);
    if (!check.ok() || check.cost > rep.cost)
        throw std::logic_error("shortcut_to_tree: postcondition failed");
    return tree;
}

std::optional<std::vector<int>> min_spanning_tree(const Instance& inst,
                                                  const std::vector<Rat>& weight,
                                                  std::span<const int> candidates) {
    std::vector<int> order(candidates.begin(), candidates.end());
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (weight[a] != weight[b]) return weight[a] < weight[b];
        return a < b;
    });
    Dsu dsu(inst.n);
    std::vector<int> tree;
    for (int e : order)
        if (dsu.unite(inst.edges[e].u, inst.edges[e].v)) tree.push_back(e);
    if (static_cast<int>(tree.size()) != inst.n - 1) return std::nullopt;
    std::sort(tree.begin(), tree.end());
    return tree;
}

bool edges_span(const Instance& inst, std::span<const int> edge_ids) {
    Dsu dsu(inst.n);
    int comps = inst.n;
    for (int e : edge_ids)
        if (dsu.unite(inst.edges[e].u, inst.edges[e].v)) --comps;
    return comps == 1;
}

}  // namespace ctj
