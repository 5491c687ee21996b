#include "ctj/decompose.hpp"

#include "ctj/graph.hpp"
#include "ctj/lp.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

namespace ctj {

SpanningTreeDecomposition decompose_spanning_trees(const Instance& inst,
                                                   const FractionalPoint& x_star) {
    const int m = static_cast<int>(inst.edges.size());
    std::vector<int> support;
    for (int e = 0; e < m; ++e) {
        if (x_star.value[e] < 0)
            throw std::invalid_argument("decompose: negative coordinate");
        if (x_star.value[e] > 0) support.push_back(e);
    }

    std::vector<Rat> costs(m);
    for (int e = 0; e < m; ++e) costs[e] = inst.edges[e].cost;
    auto first = min_spanning_tree(inst, costs, support);
    if (!first)
        throw DecomposeError("decompose: support of x* does not span", {}, Rat(0));

    // master over support rows: max Σλ s.t. Σ λ_J χ(J) <= x*  (min -Σλ)
    LpModel master;
    master.num_vars = 0;
    for (int e : support) {
        LpRow row;
        row.rel = Rel::LE;
        row.rhs = x_star.value[e];
        master.rows.push_back(std::move(row));
    }
    SimplexTableau engine;
    if (engine.build(master) != LpStatus::Optimal)
        throw std::logic_error("decompose: empty master failed");

    std::vector<int> row_of_edge(m, -1);
    for (size_t i = 0; i < support.size(); ++i) row_of_edge[support[i]] = static_cast<int>(i);

    std::vector<std::vector<int>> columns;  // tree edge ids per column
    auto add_tree = [&](const std::vector<int>& tree) {
        std::vector<Rat> col(support.size(), Rat(0));
        for (int e : tree) col[row_of_edge[e]] = 1;
        columns.push_back(tree);
        if (engine.add_column(Rat(-1), col) != LpStatus::Optimal)
            throw std::logic_error("decompose: master reoptimization failed");
    };
    add_tree(*first);

    std::set<std::vector<int>> seen{*first};
    for (;;) {
        Rat master_value = -engine.value();  // engine minimizes -Σλ
        if (master_value == 1) break;
        std::vector<Rat> duals = engine.duals();
        std::vector<Rat> w(m, Rat(0));
        for (size_t i = 0; i < support.size(); ++i) w[support[i]] = -duals[i];
        auto priced = min_spanning_tree(inst, w, support);
        if (!priced) throw std::logic_error("decompose: support stopped spanning");
        Rat tree_weight = 0;
        for (int e : *priced) tree_weight += w[e];
        if (tree_weight >= 1) {
            std::vector<Rat> cert;
            for (int e = 0; e < m; ++e) cert.push_back(w[e]);
            throw DecomposeError(
                "decompose: x* is outside the spanning tree polytope "
                "(every tree weighs >= 1 under the certificate but w·x* < 1)",
                std::move(cert), master_value);
        }
        if (!seen.insert(*priced).second)
            throw std::logic_error("decompose: pricing repeated a column");
        add_tree(*priced);
    }

    SpanningTreeDecomposition out;
    std::vector<Rat> lambda = engine.solution();
    for (size_t j = 0; j < columns.size(); ++j)
        if (lambda[j] > 0)
            out.terms.push_back(SpanningTreeDecomposition::Term{lambda[j], columns[j]});
    std::string diag;
    if (!verify_decomposition(inst, x_star, out, &diag))
        throw std::logic_error("decompose: invariant check failed: " + diag);
    return out;
}

bool verify_decomposition(const Instance& inst, const FractionalPoint& x_star,
                          const SpanningTreeDecomposition& d, std::string* diag) {
    auto fail = [&](const std::string& why) {
        if (diag) *diag = why;
        return false;
    };
    const int m = static_cast<int>(inst.edges.size());
    if (d.terms.size() > inst.edges.size() + 1)
        return fail("more than |E|+1 terms");
    Rat lambda_sum = 0;
    std::vector<Rat> mix(m, Rat(0));
    for (const auto& term : d.terms) {
        if (term.lambda <= 0) return fail("nonpositive lambda");
        lambda_sum += term.lambda;
        if (static_cast<int>(term.edges.size()) != inst.n - 1)
            return fail("term is not a spanning tree (edge count)");
        Dsu dsu(inst.n);
        for (int e : term.edges) {
            if (e < 0 || e >= m) return fail("bad edge id in term");
            if (!dsu.unite(inst.edges[e].u, inst.edges[e].v))
                return fail("term contains a cycle");
            mix[e] += term.lambda;
        }
    }
    if (lambda_sum != 1) return fail("lambdas sum to " + rat_str(lambda_sum));
    for (int e = 0; e < m; ++e)
        if (mix[e] != x_star.value[e])
            return fail("edge " + std::to_string(inst.edges[e].u) + "-" +
                        std::to_string(inst.edges[e].v) + " mixes to " + rat_str(mix[e]) +
                        " instead of " + rat_str(x_star.value[e]));
    return true;
}

const std::vector<int>& sample_tree(const SpanningTreeDecomposition& d, uint64_t seed) {
    if (d.terms.empty()) throw std::invalid_argument("sample_tree: empty decomposition");
    std::mt19937_64 rng(seed);
    uint64_t u = rng();
    Rat point(mpz_class(mpq_class(u).get_num()), mpz_class(1));  // u as exact integer
    point /= Rat(mpz_class(1) << 64);
    Rat cum = 0;
    for (const auto& term : d.terms) {
        cum += term.lambda;
        if (point < cum) return term.edges;
    }
    return d.terms.back().edges;
}

std::string format_decomposition(const Instance& inst, const SpanningTreeDecomposition& d) {
    std::ostringstream out;
    for (const auto& term : d.terms) {
        out << "lambda " << rat_str(term.lambda) << " tree";
        for (int e : term.edges) out << ' ' << inst.edges[e].u << '-' << inst.edges[e].v;
        out << "\n";
    }
    return out.str();
}

}  // namespace ctj
