#include "ctj/lp.hpp"

#include "ctj/cutscan.hpp"
#include "ctj/graph.hpp"
#include "ctj/oracle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace ctj {

namespace {

// row -= f * src, skipping zero entries exactly.
void axpy_sub(std::vector<Rat>& row, Rat& row_rhs, const Rat& f,
              const std::vector<Rat>& src, const Rat& src_rhs, mpq_t scratch) {
    const size_t n = src.size();
    for (size_t c = 0; c < n; ++c) {
        if (sgn(src[c]) == 0) continue;
        mpq_mul(scratch, f.get_mpq_t(), src[c].get_mpq_t());
        mpq_sub(row[c].get_mpq_t(), row[c].get_mpq_t(), scratch);
    }
    if (sgn(src_rhs) != 0) {
        mpq_mul(scratch, f.get_mpq_t(), src_rhs.get_mpq_t());
        mpq_sub(row_rhs.get_mpq_t(), row_rhs.get_mpq_t(), scratch);
    }
}

}  // namespace

void SimplexTableau::pivot(int r, int j) {
    Rat piv = tab_[r][j];
    if (piv != 1) {
        for (Rat& q : tab_[r])
            if (q != 0) q /= piv;
        if (rhs_[r] != 0) rhs_[r] /= piv;
    }
    mpq_t t;
    mpq_init(t);
    for (size_t i = 0; i < tab_.size(); ++i) {
        if (static_cast<int>(i) == r) continue;
        Rat f = tab_[i][j];
        if (f == 0) continue;
        axpy_sub(tab_[i], rhs_[i], f, tab_[r], rhs_[r], t);
    }
    Rat f = zrow_[j];
    if (f != 0) axpy_sub(zrow_, zval_, f, tab_[r], rhs_[r], t);
    mpq_clear(t);
    basis_[r] = j;
}

LpStatus SimplexTableau::primal_optimize() {
    for (;;) {
        int enter = -1;
        for (int j = 0; j < ncols_; ++j)
            if (!banned_[j] && zrow_[j] > 0) { enter = j; break; }
        if (enter < 0) return LpStatus::Optimal;
        int leave = -1;
        for (size_t i = 0; i < tab_.size(); ++i) {
            if (tab_[i][enter] <= 0) continue;
            if (leave < 0) { leave = static_cast<int>(i); continue; }
            // ratio test; Bland tie-break on the basic variable id
            Rat lhs = rhs_[i] * tab_[leave][enter];
            Rat rhs = rhs_[leave] * tab_[i][enter];
            if (lhs < rhs || (lhs == rhs && basis_[i] < basis_[leave]))
                leave = static_cast<int>(i);
        }
        if (leave < 0) return LpStatus::Unbounded;
        pivot(leave, enter);
    }
}

bool SimplexTableau::dual_optimize(LpStatus* status, long max_pivots) {
    for (long iter = 0; iter < max_pivots; ++iter) {
        int leave = -1;
        for (size_t i = 0; i < tab_.size(); ++i)
            if (rhs_[i] < 0 && (leave < 0 || basis_[i] < basis_[leave]))
                leave = static_cast<int>(i);
        if (leave < 0) { *status = LpStatus::Optimal; return true; }
        int enter = -1;
        for (int j = 0; j < ncols_; ++j) {
            if (banned_[j] || tab_[leave][j] >= 0) continue;
            if (enter < 0) { enter = j; continue; }
            // minimize d_j / a_rj (both nonpositive / negative), tie: lowest id
            Rat lhs = zrow_[j] * tab_[leave][enter];
            Rat rhs = zrow_[enter] * tab_[leave][j];
            // dividing by negatives flips both; compare cross products carefully:
            // d_j/a_rj < d_e/a_re  <=>  d_j*a_re > d_e*a_rj   (a_re, a_rj < 0)
            if (lhs > rhs) enter = j;
        }
        if (enter < 0) { *status = LpStatus::Infeasible; return true; }
        pivot(leave, enter);
    }
    return false;
}

void SimplexTableau::rebuild_zrow() {
    zrow_.assign(ncols_, Rat(0));
    for (int j = 0; j < ncols_; ++j) zrow_[j] = -cost_[j];
    zval_ = 0;
    for (size_t i = 0; i < tab_.size(); ++i) {
        const Rat& cb = cost_[basis_[i]];
        if (cb == 0) continue;
        for (int j = 0; j < ncols_; ++j)
            if (tab_[i][j] != 0) zrow_[j] += cb * tab_[i][j];
        zval_ += cb * rhs_[i];
    }
}

int SimplexTableau::add_col(ColKind kind, Rat cost) {
    int id = ncols_++;
    for (auto& row : tab_) row.emplace_back(0);
    zrow_.emplace_back(0);
    cost_.push_back(std::move(cost));
    banned_.push_back(false);
    kind_.push_back(kind);
    return id;
}

LpStatus SimplexTableau::build(const LpModel& model) {
    nstruct_ = model.num_vars;
    ncols_ = 0;
    tab_.clear();
    rhs_.clear();
    basis_.clear();
    zrow_.clear();
    cost_.clear();
    banned_.clear();
    kind_.clear();
    id_col_.clear();
    id_sign_.clear();
    row_sign_.clear();
    zval_ = 0;

    for (int j = 0; j < nstruct_; ++j) {
        cost_.push_back(model.objective[j]);
        banned_.push_back(false);
        kind_.push_back(ColKind::Struct);
        zrow_.emplace_back(0);
        ++ncols_;
    }

    // raw rows, rhs normalized nonnegative
    bool any_art = false;
    for (const LpRow& row : model.rows) {
        std::map<int, Rat> merged;
        for (const auto& [var, c] : row.coef) merged[var] += c;
        Rel rel = row.rel;
        Rat b = row.rhs;
        int sigma = 1;
        if (b < 0) {
            sigma = -1;
            b = -b;
            for (auto& [var, c] : merged) c = -c;
            if (rel == Rel::LE) rel = Rel::GE;
            else if (rel == Rel::GE) rel = Rel::LE;
        }
        std::vector<Rat> raw(ncols_, Rat(0));
        for (auto& [var, c] : merged) {
            if (var < 0 || var >= nstruct_) throw std::invalid_argument("bad variable id in row");
            raw[var] = c;
        }
        tab_.push_back(std::move(raw));
        rhs_.push_back(b);
        row_sign_.push_back(sigma);
        int r = static_cast<int>(tab_.size()) - 1;
        if (rel == Rel::LE) {
            int s = add_col(ColKind::Slack, Rat(0));
            tab_[r][s] = 1;
            basis_.push_back(s);
            id_col_.push_back(s);
            id_sign_.push_back(1);
        } else if (rel == Rel::GE) {
            int s = add_col(ColKind::Slack, Rat(0));
            tab_[r][s] = -1;
            int a = add_col(ColKind::Art, Rat(0));
            tab_[r][a] = 1;
            basis_.push_back(a);
            id_col_.push_back(a);
            id_sign_.push_back(1);
            any_art = true;
        } else {
            int a = add_col(ColKind::Art, Rat(0));
            tab_[r][a] = 1;
            basis_.push_back(a);
            id_col_.push_back(a);
            id_sign_.push_back(1);
            any_art = true;
        }
    }
    for (auto& row : tab_) row.resize(ncols_);

    if (any_art) {
        std::vector<Rat> real_cost = cost_;
        for (int j = 0; j < ncols_; ++j) cost_[j] = kind_[j] == ColKind::Art ? Rat(1) : Rat(0);
        rebuild_zrow();
        LpStatus st = primal_optimize();
        if (st != LpStatus::Optimal) throw std::logic_error("phase 1 unbounded");
        if (zval_ > 0) return LpStatus::Infeasible;
        // Drive basic artificials out where their row has substance; rows
        // that are entirely zero elsewhere are redundant and stay inert.
        for (size_t i = 0; i < tab_.size(); ++i) {
            if (kind_[basis_[i]] != ColKind::Art) continue;
            for (int j = 0; j < ncols_; ++j)
                if (kind_[j] != ColKind::Art && tab_[i][j] != 0) { pivot(static_cast<int>(i), j); break; }
        }
        cost_ = std::move(real_cost);
        for (int j = 0; j < ncols_; ++j)
            if (kind_[j] == ColKind::Art) banned_[j] = true;
        rebuild_zrow();
    } else {
        rebuild_zrow();
    }
    return primal_optimize();
}

bool SimplexTableau::add_row(const LpRow& row, LpStatus* status) {
    std::map<int, Rat> merged;
    for (const auto& [var, c] : row.coef) merged[var] += c;
    Rat b = row.rhs;
    int sigma = 1;
    if (row.rel == Rel::GE) {
        sigma = -1;
        b = -b;
        for (auto& [var, c] : merged) c = -c;
    } else if (row.rel != Rel::LE) {
        throw std::invalid_argument("add_row supports LE and GE rows");
    }
    std::vector<Rat> raw(ncols_, Rat(0));
    for (auto& [var, c] : merged) {
        if (var < 0 || var >= nstruct_) throw std::invalid_argument("bad variable id in row");
        raw[var] = std::move(c);
    }
    // express in the current basis
    mpq_t t;
    mpq_init(t);
    for (size_t i = 0; i < tab_.size(); ++i) {
        Rat f = raw[basis_[i]];
        if (f == 0) continue;
        axpy_sub(raw, b, f, tab_[i], rhs_[i], t);
    }
    mpq_clear(t);
    int s = add_col(ColKind::Slack, Rat(0));
    raw.resize(ncols_);
    raw[s] = 1;
    tab_.push_back(std::move(raw));
    rhs_.push_back(std::move(b));
    basis_.push_back(s);
    id_col_.push_back(s);
    id_sign_.push_back(1);
    row_sign_.push_back(sigma);
    long cap = 2000 + 40l * (static_cast<long>(tab_.size()) + ncols_);
    return dual_optimize(status, cap);
}

LpStatus SimplexTableau::add_column(const Rat& cost, const std::vector<Rat>& column) {
    if (column.size() != tab_.size()) throw std::invalid_argument("column size mismatch");
    const size_t m = tab_.size();
    std::vector<Rat> tabcol(m, Rat(0));
    for (size_t i = 0; i < m; ++i) {
        if (column[i] == 0) continue;
        const Rat f = id_sign_[i] * column[i];
        for (size_t r = 0; r < m; ++r) {
            const Rat& binv = tab_[r][id_col_[i]];
            if (binv != 0) tabcol[r] += f * binv;
        }
    }
    Rat d = -cost;
    for (size_t r = 0; r < m; ++r)
        if (tabcol[r] != 0 && cost_[basis_[r]] != 0) d += cost_[basis_[r]] * tabcol[r];
    int id = add_col(ColKind::Struct, cost);
    for (size_t r = 0; r < m; ++r) tab_[r][id] = std::move(tabcol[r]);
    zrow_[id] = std::move(d);
    return primal_optimize();
}

std::vector<Rat> SimplexTableau::solution() const {
    std::vector<Rat> x(nstruct_, Rat(0));
    for (size_t i = 0; i < tab_.size(); ++i)
        if (basis_[i] < nstruct_) x[basis_[i]] = rhs_[i];
    return x;
}

std::vector<Rat> SimplexTableau::duals() const {
    std::vector<Rat> y(tab_.size());
    for (size_t i = 0; i < tab_.size(); ++i)
        y[i] = Rat(row_sign_[i] * id_sign_[i]) * zrow_[id_col_[i]];
    return y;
}

SimplexResult simplex_solve(const LpModel& model) {
    SimplexTableau tab;
    SimplexResult res;
    res.status = tab.build(model);
    if (res.status != LpStatus::Optimal) return res;
    res.x = tab.solution();
    res.value = tab.value();
    res.duals = tab.duals();
    Rat direct = 0;
    for (int j = 0; j < model.num_vars; ++j)
        if (res.x[j] != 0) direct += model.objective[j] * res.x[j];
    if (direct != res.value) throw std::logic_error("simplex value mismatch");
    return res;
}

namespace {

struct ScoredRow {
    Rat violation;
    uint64_t mask;
    LpRow row;
};

std::vector<LpRow> take_best(std::vector<ScoredRow>& found, int batch) {
    std::sort(found.begin(), found.end(), [](const ScoredRow& a, const ScoredRow& b) {
        if (a.violation != b.violation) return a.violation > b.violation;
        return a.mask < b.mask;
    });
    if (static_cast<int>(found.size()) > batch) found.resize(batch);
    std::vector<LpRow> rows;
    rows.reserve(found.size());
    for (ScoredRow& s : found) rows.push_back(std::move(s.row));
    return rows;
}

}  // namespace

std::vector<LpRow> separate_subtour(const Instance& inst, const FractionalPoint& x,
                                    int batch, const OracleLimits& lim) {
    if (inst.n > lim.max_nodes_cut_enum)
        throw std::invalid_argument("separate_subtour: instance over cut enumeration limit");
    std::vector<ScoredRow> found;
    uint64_t all = inst.n == 64 ? ~uint64_t{0} : (uint64_t{1} << inst.n) - 1;
    scan_subsets(inst, x, all, [&](uint64_t mask, const Rat&, const Rat& inside) {
        int size = popcount64(mask);
        if (size < 2 || mask == all) return;
        Rat bound(size - 1);
        if (inside > bound) {
            LpRow row;
            for (size_t e = 0; e < inst.edges.size(); ++e)
                if ((mask >> inst.edges[e].u & 1) && (mask >> inst.edges[e].v & 1))
                    row.coef.emplace_back(static_cast<int>(e), Rat(1));
            row.rel = Rel::LE;
            row.rhs = bound;
            found.push_back(ScoredRow{inside - bound, mask, std::move(row)});
        }
    });
    return take_best(found, batch);
}

std::vector<LpRow> separate_teven(const Instance& inst, const FractionalPoint& x,
                                  int batch, const OracleLimits& lim) {
    if (inst.n > lim.max_nodes_cut_enum)
        throw std::invalid_argument("separate_teven: instance over cut enumeration limit");
    std::vector<ScoredRow> found;
    uint64_t tmask = inst.terminal_mask();
    // complements give the same cut row, so scan sets avoiding node 0
    uint64_t allowed = ((inst.n == 64 ? ~uint64_t{0} : (uint64_t{1} << inst.n) - 1)) & ~uint64_t{1};
    scan_subsets(inst, x, allowed, [&](uint64_t mask, const Rat& cut, const Rat&) {
        if (popcount64(mask & tmask) % 2 != 0) return;
        if (cut < 2) {
            LpRow row;
            for (size_t e = 0; e < inst.edges.size(); ++e)
                if (((mask >> inst.edges[e].u) & 1) != ((mask >> inst.edges[e].v) & 1))
                    row.coef.emplace_back(static_cast<int>(e), Rat(1));
            row.rel = Rel::GE;
            row.rhs = 2;
            found.push_back(ScoredRow{Rat(2) - cut, mask, std::move(row)});
        }
    });
    return take_best(found, batch);
}

Lp1Solution solve_lp1(const Instance& inst, const OracleLimits& lim, int batch) {
    if (!inst.is_metric) throw std::invalid_argument("solve_lp1: instance must be metric");
    if (inst.terminals.empty()) throw std::invalid_argument("solve_lp1: T must be nonempty");
    if (inst.n > lim.max_nodes_cut_enum)
        throw std::invalid_argument("solve_lp1: instance over cut enumeration limit");

    const int m = static_cast<int>(inst.edges.size());
    LpModel master;
    master.num_vars = m;
    master.objective.reserve(m);
    for (const Edge& e : inst.edges) master.objective.push_back(e.cost);
    {
        LpRow tree_total;
        for (int e = 0; e < m; ++e) tree_total.coef.emplace_back(e, Rat(1));
        tree_total.rel = Rel::EQ;
        tree_total.rhs = inst.n - 1;
        master.rows.push_back(std::move(tree_total));
    }
    for (int e = 0; e < m; ++e) {
        LpRow cap;
        cap.coef.emplace_back(e, Rat(1));
        cap.rel = Rel::LE;
        cap.rhs = 1;
        master.rows.push_back(std::move(cap));
    }

    SimplexTableau engine;
    LpStatus st = engine.build(master);
    if (st != LpStatus::Optimal) throw std::logic_error("solve_lp1: master LP not optimal");

    std::vector<LpRow> all_rows = master.rows;
    bool warm = true;
    FractionalPoint x(m);
    for (;;) {
        if (warm) {
            std::vector<Rat> sol = engine.solution();
            for (int e = 0; e < m; ++e) x.value[e] = sol[e];
        } else {
            LpModel full = master;
            full.rows = all_rows;
            SimplexResult res = simplex_solve(full);
            if (res.status != LpStatus::Optimal) throw std::logic_error("solve_lp1: not optimal");
            for (int e = 0; e < m; ++e) x.value[e] = res.x[e];
        }
        std::vector<LpRow> cuts = separate_subtour(inst, x, batch, lim);
        std::vector<LpRow> teven = separate_teven(inst, x, batch, lim);
        cuts.insert(cuts.end(), std::make_move_iterator(teven.begin()),
                    std::make_move_iterator(teven.end()));
        if (cuts.empty()) break;
        for (LpRow& row : cuts) {
            all_rows.push_back(row);
            if (warm && !engine.add_row(row, &st))
                warm = false;  // pivot cap hit: finish this round from scratch
            else if (warm && st != LpStatus::Optimal)
                throw std::logic_error("solve_lp1: master LP became infeasible");
        }
    }

    Lp1Solution out;
    out.x_star = x;
    if (warm) {
        out.value = engine.value();
    } else {
        out.value = 0;
        for (int e = 0; e < m; ++e)
            if (x.value[e] != 0) out.value += x.value[e] * inst.edges[e].cost;
    }
    out.rows = std::move(all_rows);

    for (const Rat& v : out.x_star.value)
        if (v < 0) throw std::logic_error("solve_lp1: negative coordinate");
    if (out.x_star.total() != inst.n - 1)
        throw std::logic_error("solve_lp1: tree total violated");
    if (!enumerate_violated_cuts(inst, out.x_star, lim).empty())
        throw std::logic_error("solve_lp1: final point fails oracle separation");
    return out;
}

}  // namespace ctj
