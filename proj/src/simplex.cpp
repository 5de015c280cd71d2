// Dense two-phase primal simplex over exact rationals.
//
// The program is brought to standard form  A·z = b, z >= 0, b >= 0  with
// slack/surplus columns, then phase 1 minimizes the sum of one artificial
// column per row. Entering and leaving choices follow Bland's rule (lowest
// index), which rules out cycling.

#include "lrsynth/lp.hpp"

#include <stdexcept>

namespace lrsynth {

namespace {

struct StandardRow {
    std::vector<LpTerm> terms;  // over structural + slack columns
    Rational rhs;
};

class Tableau {
  public:
    Tableau(size_t rows, size_t cols) : rows_(rows), cols_(cols), cells_(rows, std::vector<Rational>(cols + 1)), basis_(rows, -1) {}

    Rational& at(size_t r, size_t c) { return cells_[r][c]; }
    Rational& rhs(size_t r) { return cells_[r][cols_]; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    std::vector<int>& basis() { return basis_; }

    void pivot(size_t row, size_t col) {
        auto& prow = cells_[row];
        const Rational inv = 1 / prow[col];
        std::vector<size_t> nonzero;
        for (size_t c = 0; c <= cols_; ++c) {
            if (sgn(prow[c]) == 0) continue;
            prow[c] *= inv;
            nonzero.push_back(c);
        }
        for (size_t r = 0; r < rows_; ++r) {
            if (r == row || sgn(cells_[r][col]) == 0) continue;
            const Rational factor = cells_[r][col];
            for (size_t c : nonzero) cells_[r][c] -= factor * prow[c];
        }
        basis_[row] = static_cast<int>(col);
    }

    void drop_row(size_t row) {
        cells_.erase(cells_.begin() + static_cast<long>(row));
        basis_.erase(basis_.begin() + static_cast<long>(row));
        --rows_;
    }

  private:
    size_t rows_;
    size_t cols_;
    std::vector<std::vector<Rational>> cells_;
    std::vector<int> basis_;
};

enum class Outcome { Optimal, Unbounded };

// Minimizes cost·z over the current basic feasible tableau. Columns with
// allowed[c] == false never enter.
Outcome minimize(Tableau& t, const std::vector<Rational>& cost, const std::vector<bool>& allowed, size_t& pivots) {
    // Reduced costs d_c = cost_c - Σ_r cost_{basis(r)}·a_{r,c}, kept current across pivots.
    std::vector<Rational> reduced(cost.begin(), cost.end());
    for (size_t r = 0; r < t.rows(); ++r) {
        const Rational& cb = cost[t.basis()[r]];
        if (sgn(cb) == 0) continue;
        for (size_t c = 0; c < t.cols(); ++c)
            if (sgn(t.at(r, c)) != 0) reduced[c] -= cb * t.at(r, c);
    }

    while (true) {
        int entering = -1;
        for (size_t c = 0; c < t.cols(); ++c) {
            if (allowed[c] && sgn(reduced[c]) < 0) {
                entering = static_cast<int>(c);
                break;
            }
        }
        if (entering < 0) return Outcome::Optimal;

        int leaving = -1;
        Rational best;
        for (size_t r = 0; r < t.rows(); ++r) {
            const Rational& a = t.at(r, entering);
            if (sgn(a) <= 0) continue;
            Rational ratio = t.rhs(r) / a;
            if (leaving < 0 || ratio < best || (ratio == best && t.basis()[r] < t.basis()[leaving])) {
                leaving = static_cast<int>(r);
                best = ratio;
            }
        }
        if (leaving < 0) return Outcome::Unbounded;
        t.pivot(leaving, entering);
        ++pivots;
        const Rational factor = reduced[entering];
        for (size_t c = 0; c < t.cols(); ++c)
            if (sgn(t.at(leaving, c)) != 0) reduced[c] -= factor * t.at(leaving, c);
    }
}

}  // namespace

LpSolution solve_lp(const LpProblem& lp) {
    const size_t n = lp.variables.size();

    // Standard form rows; slack columns are numbered after the structural ones.
    std::vector<StandardRow> rows;
    size_t slack_cols = 0;
    for (const auto& c : lp.constraints) {
        for (const auto& term : c.terms)
            if (term.var < 0 || static_cast<size_t>(term.var) >= n) throw std::invalid_argument("constraint " + c.label + " references an unknown variable");
        if (c.lower && c.upper && *c.lower == *c.upper) {
            rows.push_back({c.terms, *c.lower});
            continue;
        }
        if (c.upper) {
            StandardRow row{c.terms, *c.upper};
            row.terms.push_back({static_cast<int>(n + slack_cols++), Rational(1)});
            rows.push_back(std::move(row));
        }
        if (c.lower) {
            StandardRow row{c.terms, *c.lower};
            row.terms.push_back({static_cast<int>(n + slack_cols++), Rational(-1)});
            rows.push_back(std::move(row));
        }
    }

    const size_t m = rows.size();
    const size_t real_cols = n + slack_cols;
    const size_t total_cols = real_cols + m;
    Tableau t(m, total_cols);
    for (size_t r = 0; r < m; ++r) {
        const bool flip = sgn(rows[r].rhs) < 0;
        for (const auto& term : rows[r].terms) t.at(r, term.var) += flip ? Rational(-term.coef) : term.coef;
        t.rhs(r) = flip ? Rational(-rows[r].rhs) : rows[r].rhs;
        t.at(r, real_cols + r) = 1;
        t.basis()[r] = static_cast<int>(real_cols + r);
    }

    LpSolution solution;

    // Phase 1: minimize the artificial sum.
    std::vector<Rational> phase1_cost(total_cols);
    for (size_t r = 0; r < m; ++r) phase1_cost[real_cols + r] = 1;
    std::vector<bool> allowed(total_cols, true);
    minimize(t, phase1_cost, allowed, solution.pivots);

    Rational infeasibility = 0;
    for (size_t r = 0; r < t.rows(); ++r)
        if (static_cast<size_t>(t.basis()[r]) >= real_cols) infeasibility += t.rhs(r);
    if (sgn(infeasibility) > 0) {
        solution.status = LpStatus::Infeasible;
        return solution;
    }

    // Drive remaining (zero-valued) artificials out of the basis; rows where
    // that is impossible are linearly dependent and get dropped.
    for (size_t r = 0; r < t.rows();) {
        if (static_cast<size_t>(t.basis()[r]) < real_cols) {
            ++r;
            continue;
        }
        size_t c = 0;
        while (c < real_cols && sgn(t.at(r, c)) == 0) ++c;
        if (c < real_cols) {
            t.pivot(r, c);
            ++solution.pivots;
            ++r;
        } else {
            t.drop_row(r);
        }
    }
    for (size_t c = real_cols; c < total_cols; ++c) allowed[c] = false;

    if (lp.maximize) {
        std::vector<Rational> cost(total_cols);
        for (const auto& term : lp.objective) cost[term.var] -= term.coef;
        if (minimize(t, cost, allowed, solution.pivots) == Outcome::Unbounded) {
            solution.status = LpStatus::Unbounded;
            return solution;
        }
        solution.status = LpStatus::Optimal;
    } else {
        solution.status = LpStatus::Feasible;
    }

    solution.values.assign(n, Rational(0));
    for (size_t r = 0; r < t.rows(); ++r)
        if (static_cast<size_t>(t.basis()[r]) < n) solution.values[t.basis()[r]] = t.rhs(r);
    for (const auto& term : lp.objective) solution.objective += term.coef * solution.values[term.var];
    return solution;
}

}  // namespace lrsynth
