#pragma once

#include "ctj/rational.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ctj {

struct Edge {
    int u = 0, v = 0;  // normalized u < v
    Rat cost;
};

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

// A problem instance: simple undirected graph with nonnegative rational edge
// costs, an even nonempty terminal set T, optional penalties on V∖T and an
// optional root in T. Instances are immutable once finish() has run.
struct Instance {
    int n = 0;
    std::vector<Edge> edges;
    std::vector<int> terminals;  // sorted ascending
    std::vector<Rat> penalty;    // size n; nonzero entries only off T
    bool has_penalties = false;
    std::optional<int> root;
    bool is_metric = false;

    // Builds the (u,v) -> edge id index and the metric flag. Call after
    // filling the fields above; parse_instance and the generators do this.
    void finish();

    int edge_index(int u, int v) const;
    bool complete() const;
    bool is_terminal(int v) const;
    uint64_t terminal_mask() const;  // requires n <= 63
    int default_root() const;        // root if set, else lowest terminal
    Rat total_edge_cost() const;

  private:
    std::vector<int> index_;         // n*n, -1 where absent
    std::vector<char> is_terminal_;
};

struct EdgeMultiset {
    std::vector<int> mult;  // indexed by edge id

    EdgeMultiset() = default;
    explicit EdgeMultiset(size_t m) : mult(m, 0) {}

    int total() const;
    Rat cost(const Instance& inst) const;
};

EdgeMultiset multiset_of(const Instance& inst, std::span<const int> edge_ids);

struct FractionalPoint {
    std::vector<Rat> value;  // indexed by edge id

    FractionalPoint() = default;
    explicit FractionalPoint(size_t m) : value(m) {}

    Rat cost(const Instance& inst) const;  // c · x
    Rat total() const;                     // x(E)
};

// Instance text format: one directive per line, '#' comments.
//   nodes <n>
//   T <k> <v1> ... <vk>
//   root <v>                  (optional, must be a terminal)
//   edge <u> <v> <p>[/<q>]
//   penalty <v> <p>[/<q>]     (optional, only for v not in T)
Instance parse_instance(const std::string& text);
std::string format_instance(const Instance& inst);

// Complete graph on the same nodes with exact shortest-path costs. Keeps the
// input edge order (costs replaced) and appends the missing pairs in
// lexicographic order. Throws on disconnected input.
Instance metric_completion(const Instance& inst);

struct TJoinReport {
    bool connected = false;
    bool parity_ok = false;
    Rat cost;
    bool ok() const { return connected && parity_ok; }
};
TJoinReport validate_connected_tjoin(const Instance& inst, const EdgeMultiset& f);

std::vector<int> degrees(const Instance& inst, const EdgeMultiset& f);

// Nodes of T with even degree plus nodes off T with odd degree.
std::vector<int> wrong_degree_set(const Instance& inst, std::span<const int> tree_edges);
std::vector<int> wrong_degree_set(const Instance& inst, const EdgeMultiset& f);

// Shortcuts cycles and duplicate edges out of a connected T-join until a
// spanning tree with odd-degree set exactly T remains. Never increases cost;
// every step shrinks the multiset. Requires a metric instance and T nonempty.
std::vector<int> shortcut_to_tree(const Instance& inst, const EdgeMultiset& f);

// Minimum-weight spanning tree over the candidate edges (Kruskal, ties by
// edge id). Returns std::nullopt when the candidates do not span.
std::optional<std::vector<int>> min_spanning_tree(const Instance& inst,
                                                  const std::vector<Rat>& weight,
                                                  std::span<const int> candidates);

bool edges_span(const Instance& inst, std::span<const int> edge_ids);

}  // namespace ctj
