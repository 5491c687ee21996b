#pragma once

#include "ctj/instance.hpp"
#include "ctj/oracle_limits.hpp"

#include <vector>

namespace ctj {

enum class Rel { LE, EQ, GE };

struct LpRow {
    std::vector<std::pair<int, Rat>> coef;  // variable id -> coefficient
    Rel rel = Rel::LE;
    Rat rhs;
};

// min objective · x  subject to rows, x >= 0.
struct LpModel {
    int num_vars = 0;
    std::vector<Rat> objective;
    std::vector<LpRow> rows;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct SimplexResult {
    LpStatus status = LpStatus::Infeasible;
    std::vector<Rat> x;
    Rat value;
    // Per-row duals with value == duals · rhs at an optimum; <= 0 on LE rows,
    // >= 0 on GE rows, free on EQ rows.
    std::vector<Rat> duals;
};

// Exact two-phase primal simplex, Bland's rule over a fixed variable order.
SimplexResult simplex_solve(const LpModel& model);

// Dense exact tableau that additionally supports warm re-optimization after
// row additions (dual simplex) and column additions (primal simplex), for
// the cutting-plane and column-generation loops.
class SimplexTableau {
  public:
    LpStatus build(const LpModel& model);

    // Appends a row (LE or GE over structural variables) and reoptimizes with
    // the dual simplex. Returns false when the pivot cap was hit; the caller
    // should fall back to a from-scratch solve.
    bool add_row(const LpRow& row, LpStatus* status);

    // Appends a structural column (entries indexed by row in insertion order)
    // and reoptimizes with the primal simplex.
    LpStatus add_column(const Rat& cost, const std::vector<Rat>& column);

    int num_structural() const { return nstruct_; }
    Rat value() const { return zval_; }
    std::vector<Rat> solution() const;
    std::vector<Rat> duals() const;

  private:
    enum class ColKind { Struct, Slack, Art };

    int ncols_ = 0, nstruct_ = 0;
    std::vector<std::vector<Rat>> tab_;
    std::vector<Rat> rhs_;
    std::vector<int> basis_;
    std::vector<Rat> zrow_;  // d_j = cB B^-1 A_j - c_j
    Rat zval_;               // cB · rhs
    std::vector<Rat> cost_;
    std::vector<char> banned_;
    std::vector<ColKind> kind_;
    std::vector<int> id_col_, id_sign_, row_sign_;

    void pivot(int r, int j);
    LpStatus primal_optimize();
    bool dual_optimize(LpStatus* status, long max_pivots);
    void rebuild_zrow();
    int add_col(ColKind kind, Rat cost);
};

struct Lp1Solution {
    FractionalPoint x_star;
    Rat value;
    std::vector<LpRow> rows;  // master rows plus every generated cut
};

// Cutting-plane solver for the connected-T-join relaxation: spanning tree
// rows plus T-even cut rows, separated exhaustively at desk scale. The final
// point is certified against oracle cut enumeration.
Lp1Solution solve_lp1(const Instance& inst, const OracleLimits& lim = {}, int batch = 50);

std::vector<LpRow> separate_subtour(const Instance& inst, const FractionalPoint& x,
                                    int batch = 50, const OracleLimits& lim = {});
std::vector<LpRow> separate_teven(const Instance& inst, const FractionalPoint& x,
                                  int batch = 50, const OracleLimits& lim = {});

}  // namespace ctj
