#pragma once

#include <utility>
#include <vector>

#include "npairs/rational.hpp"

namespace npairs {

// Equality-form linear program over exact rationals:
//   minimize c.x  subject to  A x = b,  x >= 0.
// Inequalities must be brought to this form by the caller (slack columns).
struct LinearProgram {
    int num_vars = 0;
    std::vector<Rat> objective;  // size num_vars; minimized
    struct Row {
        std::vector<std::pair<int, Rat>> coeffs;
        Rat rhs;
    };
    std::vector<Row> rows;

    int add_var(Rat cost = Rat(0));
    int add_row(Rat rhs);
    void set_coeff(int row, int var, Rat value);
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    std::vector<Rat> solution;  // when Optimal
    Rat objective_value;
    // When Infeasible: row multipliers y with y.A <= 0 componentwise and
    // y.b > 0, re-verified against the input before being returned.
    std::vector<Rat> infeasibility_certificate;
};

// Two-phase dense primal simplex with Bland's anti-cycling rule. Exact;
// intended for small desk-scale programs.
LpResult solve_lp(const LinearProgram& lp);

}  // namespace npairs
