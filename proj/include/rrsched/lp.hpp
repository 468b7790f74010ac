#pragma once

#include <string>
#include <utility>
#include <vector>

namespace rrsched {

/// Shared numeric tolerances, stated once and used everywhere.
namespace tol {
inline constexpr double feasibility = 1e-7;
inline constexpr double reduced_cost = 1e-6;
inline constexpr double integrality = 1e-6;
}  // namespace tol

enum class RowSense { Equal, GreaterEqual };

enum class LpStatus { Optimal, Infeasible, Unbounded };

/// Sparse vector as (index, value) pairs; indices refer to rows when
/// describing a column and vice versa.
using SparseVec = std::vector<std::pair<int, double>>;

struct LpResult {
    LpStatus status = LpStatus::Optimal;
    double objective = 0.0;
    std::vector<double> primal;      // per column
    std::vector<double> duals;       // per row
    std::vector<double> farkas_ray;  // per row, present iff Infeasible
    bool truncated = false;          // pivot cap hit; objective is an upper bound
};

/// Equality/>= constrained LP over nonnegative variables, solved by a
/// two-phase dense primal simplex. The solver keeps its basis between
/// calls, so column generation resumes from the previous optimum (or from
/// the previous phase-1 point while the master is still infeasible).
/// Adding a row invalidates the basis and triggers a cold start.
class LpSolver {
public:
    LpSolver() = default;

    int add_row(double rhs, RowSense sense, const SparseVec& coeffs = {});
    int add_column(double objective, const SparseVec& coeffs);

    /// Changes one objective coefficient. The basis stays valid (primal
    /// feasibility is untouched), so the next solve warm-starts.
    void set_objective(int column, double objective);

    int num_rows() const { return static_cast<int>(rhs_.size()); }
    int num_columns() const { return static_cast<int>(obj_.size()); }

    /// Total simplex pivots performed so far, across all solves.
    long pivot_count() const { return pivots_; }

    /// Caps phase-2 pivots per solve; on overrun the solve stops at the
    /// current (feasible, possibly suboptimal) point and the result is
    /// flagged `truncated`. 0 disables the cap. Intended for heuristic
    /// bounding where an over-estimate is acceptable.
    void set_pivot_cap(long cap) { pivot_cap_ = cap; }

    const LpResult& solve();

    /// Writes the model in CPLEX LP text format for external debugging.
    void dump_lp(const std::string& path) const;

private:
    struct Column {
        double obj;
        SparseVec coeffs;
    };

    const LpResult& solve_impl();
    void cold_start();
    std::vector<int> surplus_rows() const;
    void refactorize();
    bool run_phase(bool phase1);
    double reduced_cost_internal(int j, const std::vector<double>& y) const;
    std::vector<double> basic_costs(bool phase1) const;
    std::vector<double> compute_duals(bool phase1) const;
    std::vector<double> ftran(int j) const;
    void pivot(int row, int j, const std::vector<double>& alpha);

    // user-visible model
    std::vector<double> obj_;
    std::vector<Column> cols_;
    std::vector<double> rhs_;
    std::vector<RowSense> sense_;

    // internal standard form: structural columns, then one surplus column
    // per >= row; rows flipped so the internal rhs is nonnegative
    std::vector<double> row_sign_;
    std::vector<int> surplus_col_;  // internal column index per >= row, -1 otherwise

    // basis state
    bool basis_valid_ = false;
    std::vector<int> basis_;        // per row: internal column index, or -1-row for artificials
    std::vector<double> binv_;      // dense m x m row-major inverse
    std::vector<double> xb_;        // basic variable values
    std::vector<char> in_basis_;    // per internal column
    long pivots_ = 0;
    int pivots_since_refactor_ = 0;
    int degenerate_streak_ = 0;
    long pivot_cap_ = 0;
    bool cap_hit_ = false;

    LpResult result_;

    int num_internal_cols() const;
    double internal_obj(int j, bool phase1) const;
    SparseVec internal_col(int j) const;  // in flipped row space
};

}  // namespace rrsched
