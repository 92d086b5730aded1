#pragma once

#include "vahlen/exact_scalar.hpp"

#include <optional>
#include <vector>

namespace vahlen {

// Exact rational-arithmetic linear programming over the scalar field:
//   maximize c.x  subject to  A x <= b,  x free.
// Primal simplex on the (u - v, slack) standard form with Bland's rule.
// Every verdict carries a certificate that is re-checked on extraction:
// optimal -> primal point + dual multipliers, infeasible -> Farkas vector,
// unbounded -> recession ray.
struct LpResult {
    enum class Status { Optimal, Infeasible, Unbounded } status;
    std::vector<ExactScalar> point;  // optimal x (Optimal)
    ExactScalar value;               // optimal objective (Optimal)
    std::vector<ExactScalar> dual;   // y >= 0 with A^T y = c, b.y = value (Optimal)
    std::vector<ExactScalar> farkas; // y >= 0 with A^T y = 0, b.y < 0 (Infeasible)
    std::vector<ExactScalar> ray;    // d with A d <= 0, c.d > 0 (Unbounded)
};

class SimplexSolver {
public:
    SimplexSolver(std::vector<std::vector<ExactScalar>> A, std::vector<ExactScalar> b,
                  std::vector<ExactScalar> c, FieldDesc f = {})
        : A_(std::move(A)), b_(std::move(b)), c_(std::move(c)), f_(f),
          m_(int(A_.size())), n_(m_ ? int(A_[0].size()) : int(c_.size())) {}

    LpResult solve() {
        build_tableau();
        if (!phase_one()) return make_infeasible();
        set_objective();
        int st = optimize();
        if (st < 0) return make_unbounded();
        return make_optimal();
    }

private:
    using Row = std::vector<ExactScalar>;

    ExactScalar zero() const { return ExactScalar(Rat(0), f_); }
    ExactScalar one() const { return ExactScalar::integer(1, f_); }

    // columns: [0, 2n) structural u,v; [2n, 2n+m) slack; 2n+m aux; last rhs
    int col_u(int j) const { return j; }
    int col_v(int j) const { return n_ + j; }
    int col_s(int i) const { return 2 * n_ + i; }
    int col_aux() const { return 2 * n_ + m_; }
    int cols() const { return 2 * n_ + m_ + 1; }
    int rhs() const { return cols(); } // index of rhs inside a padded row

    void build_tableau() {
        T_.assign(m_, Row(cols() + 1, zero()));
        basis_.resize(m_);
        for (int i = 0; i < m_; ++i) {
            for (int j = 0; j < n_; ++j) {
                T_[i][col_u(j)] = A_[i][j];
                T_[i][col_v(j)] = -A_[i][j];
            }
            T_[i][col_s(i)] = one();
            T_[i][col_aux()] = -one();
            T_[i][rhs()] = b_[i];
            basis_[i] = col_s(i);
        }
        z_.assign(cols() + 1, zero());
    }

    void pivot(int row, int col) {
        ExactScalar inv = T_[row][col].inverse();
        for (auto& x : T_[row]) x *= inv;
        for (int i = 0; i < m_; ++i) {
            if (i == row || T_[i][col].is_zero()) continue;
            ExactScalar fct = T_[i][col];
            for (int k = 0; k <= cols(); ++k) T_[i][k] -= fct * T_[row][k];
        }
        if (!z_[col].is_zero()) {
            ExactScalar fct = z_[col];
            for (int k = 0; k <= cols(); ++k) z_[k] -= fct * T_[row][k];
        }
        basis_[row] = col;
    }

    // objective row: z holds reduced costs; maximize, entering col has
    // positive coefficient. Returns 0 at optimum, -1 if unbounded
    // (ray stored in ray_cols_).
    int optimize() {
        for (;;) {
            int enter = -1;
            for (int j = 0; j < cols(); ++j)
                if (!col_blocked_[j] && z_[j].sign() > 0) { enter = j; break; }
            if (enter < 0) return 0;
            int leave = -1;
            ExactScalar best = zero();
            for (int i = 0; i < m_; ++i) {
                if (T_[i][enter].sign() <= 0) continue;
                ExactScalar ratio = T_[i][rhs()] / T_[i][enter];
                if (leave < 0 || (ratio - best).sign() < 0 ||
                    ((ratio - best).sign() == 0 && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0) { unbounded_col_ = enter; return -1; }
            pivot(leave, enter);
        }
    }

    bool phase_one() {
        col_blocked_.assign(cols(), false);
        int worst = -1;
        for (int i = 0; i < m_; ++i)
            if (b_[i].sign() < 0 && (worst < 0 || (b_[i] - b_[worst]).sign() < 0)) worst = i;
        if (worst < 0) { col_blocked_[col_aux()] = true; return true; }
        // maximize -x0 after making the dictionary feasible
        z_.assign(cols() + 1, zero());
        z_[col_aux()] = -one();
        normalize_objective();
        pivot(worst, col_aux());
        if (optimize() < 0) throw std::logic_error("phase one cannot be unbounded");
        if (z_[rhs()].sign() != 0) return false; // optimum of -x0 is negative
        // drive x0 out of the basis if degenerate
        for (int i = 0; i < m_; ++i)
            if (basis_[i] == col_aux()) {
                int col = -1;
                for (int j = 0; j < cols(); ++j)
                    if (j != col_aux() && !T_[i][j].is_zero()) { col = j; break; }
                if (col < 0) throw std::logic_error("degenerate aux row");
                pivot(i, col);
            }
        col_blocked_[col_aux()] = true;
        return true;
    }

    void set_objective() {
        z_.assign(cols() + 1, zero());
        for (int j = 0; j < n_; ++j) {
            z_[col_u(j)] = c_[j];
            z_[col_v(j)] = -c_[j];
        }
        normalize_objective();
    }

    // subtract basic rows so reduced costs of basic columns vanish
    void normalize_objective() {
        for (int i = 0; i < m_; ++i) {
            int bcol = basis_[i];
            if (z_[bcol].is_zero()) continue;
            ExactScalar fct = z_[bcol];
            for (int k = 0; k <= cols(); ++k) z_[k] -= fct * T_[i][k];
        }
    }

    std::vector<ExactScalar> extract_point() const {
        std::vector<ExactScalar> val(cols(), zero());
        for (int i = 0; i < m_; ++i) val[basis_[i]] = T_[i][rhs()];
        std::vector<ExactScalar> x(n_, zero());
        for (int j = 0; j < n_; ++j) x[j] = val[col_u(j)] - val[col_v(j)];
        return x;
    }

    // simplex multipliers: y_i = -(reduced cost of slack i)
    std::vector<ExactScalar> extract_multipliers() const {
        std::vector<ExactScalar> y(m_, zero());
        for (int i = 0; i < m_; ++i) y[i] = -z_[col_s(i)];
        return y;
    }

    LpResult make_optimal() const {
        LpResult r;
        r.status = LpResult::Status::Optimal;
        r.point = extract_point();
        r.dual = extract_multipliers();
        r.value = zero();
        for (int j = 0; j < n_; ++j) r.value += c_[j] * r.point[j];
        // verify: primal feasible, dual >= 0, A^T y = c, strong duality
        for (int i = 0; i < m_; ++i) {
            ExactScalar lhs = zero();
            for (int j = 0; j < n_; ++j) lhs += A_[i][j] * r.point[j];
            if ((lhs - b_[i]).sign() > 0) throw std::logic_error("lp: primal infeasible point");
            if (r.dual[i].sign() < 0) throw std::logic_error("lp: negative dual");
        }
        ExactScalar by = zero();
        for (int i = 0; i < m_; ++i) by += b_[i] * r.dual[i];
        if (!(by == r.value)) throw std::logic_error("lp: duality gap");
        for (int j = 0; j < n_; ++j) {
            ExactScalar aj = zero();
            for (int i = 0; i < m_; ++i) aj += A_[i][j] * r.dual[i];
            if (!(aj == c_[j])) throw std::logic_error("lp: dual does not reproduce objective");
        }
        return r;
    }

    LpResult make_infeasible() const {
        LpResult r;
        r.status = LpResult::Status::Infeasible;
        r.farkas = extract_multipliers();
        ExactScalar by = zero();
        for (int i = 0; i < m_; ++i) {
            if (r.farkas[i].sign() < 0) throw std::logic_error("lp: negative Farkas entry");
            by += b_[i] * r.farkas[i];
        }
        if (by.sign() >= 0) throw std::logic_error("lp: Farkas value not negative");
        for (int j = 0; j < n_; ++j) {
            ExactScalar aj = zero();
            for (int i = 0; i < m_; ++i) aj += A_[i][j] * r.farkas[i];
            if (!aj.is_zero()) throw std::logic_error("lp: Farkas combination not zero");
        }
        r.value = by;
        return r;
    }

    LpResult make_unbounded() const {
        LpResult r;
        r.status = LpResult::Status::Unbounded;
        // entering column with no blocking row gives the ray
        std::vector<ExactScalar> dir(cols(), zero());
        dir[unbounded_col_] = one();
        for (int i = 0; i < m_; ++i) dir[basis_[i]] = -T_[i][unbounded_col_];
        r.ray.assign(n_, zero());
        for (int j = 0; j < n_; ++j) r.ray[j] = dir[col_u(j)] - dir[col_v(j)];
        ExactScalar cd = zero();
        for (int j = 0; j < n_; ++j) cd += c_[j] * r.ray[j];
        if (cd.sign() <= 0) throw std::logic_error("lp: ray does not improve objective");
        for (int i = 0; i < m_; ++i) {
            ExactScalar ad = zero();
            for (int j = 0; j < n_; ++j) ad += A_[i][j] * r.ray[j];
            if (ad.sign() > 0) throw std::logic_error("lp: ray leaves feasible cone");
        }
        return r;
    }

    std::vector<Row> A_;
    std::vector<ExactScalar> b_, c_;
    FieldDesc f_;
    int m_, n_;
    std::vector<Row> T_;
    Row z_;
    std::vector<int> basis_;
    std::vector<bool> col_blocked_;
    int unbounded_col_ = -1;
};

inline LpResult lp_solve_exact(std::vector<std::vector<ExactScalar>> A, std::vector<ExactScalar> b,
                               std::vector<ExactScalar> c, FieldDesc f = {}) {
    return SimplexSolver(std::move(A), std::move(b), std::move(c), f).solve();
}

} // namespace vahlen
