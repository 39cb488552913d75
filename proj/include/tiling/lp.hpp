#pragma once

#include <vector>

#include "tiling/error.hpp"
#include "tiling/rational.hpp"

namespace tiling {

// Exact rational primal simplex for max c.x s.t. Ax <= b, x >= 0 with b >= 0,
// so the slack basis is primal feasible and no phase one is needed. Bland's
// rule throughout (lowest eligible index enters, ratio ties leave by lowest
// basic column index), which makes the solve deterministic and cycle-free.
struct LpResult {
    Rational objective;
    std::vector<Rational> x;     // primal solution over the n structural vars
    std::vector<Rational> dual;  // y >= 0 with y.b = objective, A^T y >= c
    long long pivots = 0;
};

class SimplexTableau {
public:
    SimplexTableau(int rows, int cols) : m_(rows), n_(cols), cols_total_(cols + rows) {
        a_.assign(m_, std::vector<Rational>(cols_total_));
        b_.assign(m_, Rational(0));
        obj_.assign(cols_total_, Rational(0));
        basis_.resize(m_);
        for (int i = 0; i < m_; ++i) {
            a_[i][n_ + i] = Rational(1);
            basis_[i] = n_ + i;
        }
    }

    void set_entry(int row, int col, Rational v) { a_[row][col] = std::move(v); }
    void set_rhs(int row, Rational v) { b_[row] = std::move(v); }
    void set_objective(int col, Rational v) { obj_[col] = std::move(v); }

    LpResult solve() {
        long long pivots = 0;
        for (;;) {
            int enter = -1;
            for (int j = 0; j < cols_total_; ++j)
                if (obj_[j] > Rational(0)) {
                    enter = j;
                    break;
                }
            if (enter < 0) break;
            int leave = -1;
            Rational best_ratio(0);
            for (int i = 0; i < m_; ++i) {
                if (a_[i][enter] <= Rational(0)) continue;
                Rational ratio = b_[i] / a_[i][enter];
                if (leave < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave < 0) throw error(errc::precondition, "LP is unbounded");
            pivot(leave, enter);
            ++pivots;
        }
        LpResult res;
        res.pivots = pivots;
        res.objective = Rational(0);
        res.x.assign(n_, Rational(0));
        for (int i = 0; i < m_; ++i)
            if (basis_[i] < n_) res.x[basis_[i]] = b_[i];
        for (int j = 0; j < n_; ++j) res.objective += res.x[j] * orig_obj_cache_[j];
        res.dual.assign(m_, Rational(0));
        for (int i = 0; i < m_; ++i) res.dual[i] = -obj_[n_ + i];
        return res;
    }

    void freeze_objective() { orig_obj_cache_ = obj_; }

private:
    void pivot(int leave, int enter) {
        Rational p = a_[leave][enter];
        for (int j = 0; j < cols_total_; ++j) a_[leave][j] /= p;
        b_[leave] /= p;
        for (int i = 0; i < m_; ++i) {
            if (i == leave) continue;
            Rational f = a_[i][enter];
            if (f == Rational(0)) continue;
            for (int j = 0; j < cols_total_; ++j)
                if (a_[leave][j] != Rational(0)) a_[i][j] -= f * a_[leave][j];
            b_[i] -= f * b_[leave];
        }
        Rational f = obj_[enter];
        if (f != Rational(0))
            for (int j = 0; j < cols_total_; ++j)
                if (a_[leave][j] != Rational(0)) obj_[j] -= f * a_[leave][j];
        basis_[leave] = enter;
    }

    int m_, n_, cols_total_;
    std::vector<std::vector<Rational>> a_;
    std::vector<Rational> b_;
    std::vector<Rational> obj_;
    std::vector<Rational> orig_obj_cache_;
    std::vector<int> basis_;
};

// max c.x s.t. Ax <= b, x >= 0 with b >= 0. Columns of A supplied sparse as
// (row, coefficient) lists.
inline LpResult solve_packing_lp(int rows,
                                 const std::vector<std::vector<std::pair<int, Rational>>>& cols,
                                 const std::vector<Rational>& rhs,
                                 const std::vector<Rational>& objective) {
    int n = static_cast<int>(cols.size());
    SimplexTableau t(rows, n);
    for (int j = 0; j < n; ++j) {
        for (const auto& [i, v] : cols[j]) t.set_entry(i, j, v);
        t.set_objective(j, objective[j]);
    }
    for (int i = 0; i < rows; ++i) t.set_rhs(i, rhs[i]);
    t.freeze_objective();
    return t.solve();
}

}  // namespace tiling
