#include "npairs/simplex.hpp"

#include <stdexcept>

namespace npairs {

int LinearProgram::add_var(Rat cost) {
    objective.push_back(std::move(cost));
    return num_vars++;
}

int LinearProgram::add_row(Rat rhs) {
    rows.push_back({{}, std::move(rhs)});
    return static_cast<int>(rows.size()) - 1;
}

void LinearProgram::set_coeff(int row, int var, Rat value) {
    rows[row].coeffs.emplace_back(var, std::move(value));
}

namespace {

// Dense tableau. Columns: the n structural variables, then one artificial
// per row, then the rhs. Row `m` holds reduced costs and the negated
// objective value.
class Tableau {
public:
    Tableau(const LinearProgram& lp)
        : m_(static_cast<int>(lp.rows.size())), n_(lp.num_vars) {
        cols_ = n_ + m_ + 1;
        t_.assign(m_ + 1, std::vector<Rat>(cols_, Rat(0)));
        basis_.resize(m_);
        alive_.assign(m_, true);
        for (int r = 0; r < m_; ++r) {
            Rat rhs = lp.rows[r].rhs;
            bool flip = rhs < 0;
            for (const auto& [v, c] : lp.rows[r].coeffs) t_[r][v] += flip ? -c : c;
            t_[r][rhs_col()] = flip ? -rhs : rhs;
            t_[r][n_ + r] = Rat(1);  // artificial
            basis_[r] = n_ + r;
        }
    }

    int rhs_col() const { return cols_ - 1; }
    bool is_artificial(int col) const { return col >= n_; }

    void price(const std::vector<Rat>& cost) {
        // cost covers structural and artificial columns.
        for (int j = 0; j < cols_; ++j) t_[m_][j] = (j < cols_ - 1) ? cost[j] : Rat(0);
        for (int r = 0; r < m_; ++r) {
            if (!alive_[r]) continue;
            const Rat& cb = cost[basis_[r]];
            if (cb == 0) continue;
            for (int j = 0; j < cols_; ++j)
                if (t_[r][j] != 0) t_[m_][j] -= cb * t_[r][j];
        }
    }

    // Bland: entering = smallest eligible column, leaving = min-ratio with
    // smallest basic variable as the tie-break. Returns Optimal/Unbounded.
    LpStatus run(bool allow_artificial_entering) {
        for (;;) {
            int enter = -1;
            for (int j = 0; j < cols_ - 1; ++j) {
                if (!allow_artificial_entering && is_artificial(j)) continue;
                if (t_[m_][j] < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) return LpStatus::Optimal;
            int leave = -1;
            Rat best;
            for (int r = 0; r < m_; ++r) {
                if (!alive_[r] || t_[r][enter] <= 0) continue;
                Rat ratio = t_[r][rhs_col()] / t_[r][enter];
                if (leave < 0 || ratio < best ||
                    (ratio == best && basis_[r] < basis_[leave])) {
                    leave = r;
                    best = ratio;
                }
            }
            if (leave < 0) return LpStatus::Unbounded;
            pivot(leave, enter);
        }
    }

    void pivot(int row, int col) {
        Rat p = t_[row][col];
        for (int j = 0; j < cols_; ++j)
            if (t_[row][j] != 0) t_[row][j] /= p;
        for (int r = 0; r <= m_; ++r) {
            if (r == row) continue;
            Rat f = t_[r][col];
            if (f == 0) continue;
            for (int j = 0; j < cols_; ++j)
                if (t_[row][j] != 0) t_[r][j] -= f * t_[row][j];
        }
        basis_[row] = col;
    }

    Rat objective_value() const { return -t_[m_][rhs_col()]; }

    // Pivot artificials out of the basis where possible; drop redundant
    // rows (all-zero over structural columns).
    void eliminate_artificials() {
        for (int r = 0; r < m_; ++r) {
            if (!alive_[r] || !is_artificial(basis_[r])) continue;
            int col = -1;
            for (int j = 0; j < n_; ++j)
                if (t_[r][j] != 0) {
                    col = j;
                    break;
                }
            if (col >= 0) pivot(r, col);
            else alive_[r] = false;
        }
    }

    std::vector<Rat> solution() const {
        std::vector<Rat> x(n_, Rat(0));
        for (int r = 0; r < m_; ++r)
            if (alive_[r] && basis_[r] < n_) x[basis_[r]] = t_[r][rhs_col()];
        return x;
    }

    // Phase-1 duals read off the artificial columns' reduced costs.
    std::vector<Rat> phase1_duals() const {
        std::vector<Rat> y(m_);
        for (int r = 0; r < m_; ++r) y[r] = Rat(1) - t_[m_][n_ + r];
        return y;
    }

    int rows() const { return m_; }

private:
    int m_, n_, cols_;
    std::vector<std::vector<Rat>> t_;
    std::vector<int> basis_;
    std::vector<bool> alive_;
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
    const int m = static_cast<int>(lp.rows.size());
    const int n = lp.num_vars;
    Tableau tab(lp);

    // Phase 1: minimize the sum of artificials.
    std::vector<Rat> phase1_cost(n + m, Rat(0));
    for (int r = 0; r < m; ++r) phase1_cost[n + r] = Rat(1);
    tab.price(phase1_cost);
    if (tab.run(true) != LpStatus::Optimal)
        throw std::logic_error("phase-1 simplex cannot be unbounded");

    LpResult result;
    if (tab.objective_value() != 0) {
        // Infeasible. Verify the Farkas certificate against the input
        // (on the sign-normalized rows the tableau was built from).
        std::vector<Rat> y = tab.phase1_duals();
        Rat yb(0);
        std::vector<Rat> yA(n, Rat(0));
        for (int r = 0; r < m; ++r) {
            Rat rhs = lp.rows[r].rhs;
            bool flip = rhs < 0;
            Rat yr = flip ? -y[r] : y[r];
            yb += yr * rhs;
            for (const auto& [v, c] : lp.rows[r].coeffs) yA[v] += yr * c;
        }
        bool ok = yb > 0;
        for (int j = 0; j < n && ok; ++j) ok = yA[j] <= 0;
        if (!ok) throw std::logic_error("infeasibility certificate failed verification");
        result.status = LpStatus::Infeasible;
        result.infeasibility_certificate = std::move(y);
        return result;
    }

    tab.eliminate_artificials();

    // Phase 2 with the real objective; artificials are barred.
    std::vector<Rat> phase2_cost(n + m, Rat(0));
    for (int j = 0; j < n; ++j) phase2_cost[j] = lp.objective[j];
    tab.price(phase2_cost);
    LpStatus st = tab.run(false);
    if (st == LpStatus::Unbounded) {
        result.status = LpStatus::Unbounded;
        return result;
    }
    result.status = LpStatus::Optimal;
    result.solution = tab.solution();
    result.objective_value = tab.objective_value();

    // Exactness self-check: the solution must satisfy every row.
    for (const auto& row : lp.rows) {
        Rat lhs(0);
        for (const auto& [v, c] : row.coeffs) lhs += c * result.solution[v];
        if (lhs != row.rhs) throw std::logic_error("simplex solution fails a constraint row");
    }
    return result;
}

}  // namespace npairs
