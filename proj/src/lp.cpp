#include "rrsched/lp.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace rrsched {

namespace {
constexpr double kEnterTol = 1e-9;   // reduced-cost threshold for entering
constexpr double kPivotTol = 1e-9;   // smallest acceptable ratio-test pivot
constexpr double kArtifTol = 1e-7;   // artificial elimination threshold
constexpr int kRefactorEvery = 100;
constexpr int kBlandAfter = 100;     // degenerate pivots before Bland's rule
constexpr long kPivotLimit = 500000;  // per phase call; exceeded = numerical failure
}  // namespace

int LpSolver::add_row(double rhs, RowSense sense, const SparseVec& coeffs) {
    const int r = num_rows();
    for (const auto& [col, v] : coeffs) {
        if (col < 0 || col >= num_columns())
            throw std::out_of_range("add_row: column index out of range");
        cols_[col].coeffs.emplace_back(r, v);
    }
    rhs_.push_back(rhs);
    sense_.push_back(sense);
    row_sign_.push_back(rhs < 0 ? -1.0 : 1.0);
    basis_valid_ = false;
    return r;
}

int LpSolver::add_column(double objective, const SparseVec& coeffs) {
    for (const auto& [row, v] : coeffs)
        if (row < 0 || row >= num_rows())
            throw std::out_of_range("add_column: row index out of range");
    const int c = num_columns();
    obj_.push_back(objective);
    cols_.push_back(Column{objective, coeffs});
    if (basis_valid_) in_basis_.push_back(false);
    return c;
}

void LpSolver::set_objective(int column, double objective) {
    if (column < 0 || column >= num_columns())
        throw std::out_of_range("set_objective: column index out of range");
    obj_[column] = objective;
    cols_[column].obj = objective;
}

int LpSolver::num_internal_cols() const {
    int ns = 0;
    for (const auto s : sense_)
        if (s == RowSense::GreaterEqual) ++ns;
    return ns + num_columns();
}

std::vector<int> LpSolver::surplus_rows() const {
    std::vector<int> rows;
    for (int r = 0; r < num_rows(); ++r)
        if (sense_[r] == RowSense::GreaterEqual) rows.push_back(r);
    return rows;
}

double LpSolver::internal_obj(int j, bool phase1) const {
    if (phase1) return 0.0;
    const int ns = num_internal_cols() - num_columns();
    return j < ns ? 0.0 : obj_[j - ns];
}

SparseVec LpSolver::internal_col(int j) const {
    const int ns = num_internal_cols() - num_columns();
    if (j < ns) {
        // surplus column of the j-th >= row
        int seen = 0;
        for (int r = 0; r < num_rows(); ++r) {
            if (sense_[r] != RowSense::GreaterEqual) continue;
            if (seen++ == j) return {{r, -row_sign_[r]}};
        }
        throw std::logic_error("surplus index out of range");
    }
    SparseVec out;
    out.reserve(cols_[j - ns].coeffs.size());
    for (const auto& [r, v] : cols_[j - ns].coeffs) out.emplace_back(r, row_sign_[r] * v);
    return out;
}

void LpSolver::cold_start() {
    const int m = num_rows();
    basis_.assign(m, 0);
    for (int i = 0; i < m; ++i) basis_[i] = -1 - i;  // all-artificial basis
    binv_.assign(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i) binv_[static_cast<std::size_t>(i) * m + i] = 1.0;
    xb_.resize(m);
    for (int i = 0; i < m; ++i) xb_[i] = row_sign_[i] * rhs_[i];
    in_basis_.assign(num_internal_cols(), false);
    pivots_since_refactor_ = 0;
    degenerate_streak_ = 0;
    basis_valid_ = true;
}

void LpSolver::refactorize() {
    const int m = num_rows();
    // assemble B and invert by Gauss-Jordan with partial pivoting
    std::vector<double> b(static_cast<std::size_t>(m) * m, 0.0);
    std::vector<double> inv(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i) inv[static_cast<std::size_t>(i) * m + i] = 1.0;
    for (int i = 0; i < m; ++i) {
        if (basis_[i] < 0) {
            b[static_cast<std::size_t>(-1 - basis_[i]) * m + i] = 1.0;
        } else {
            for (const auto& [r, v] : internal_col(basis_[i]))
                b[static_cast<std::size_t>(r) * m + i] = v;
        }
    }
    for (int k = 0; k < m; ++k) {
        int piv = k;
        for (int i = k + 1; i < m; ++i)
            if (std::abs(b[static_cast<std::size_t>(i) * m + k]) >
                std::abs(b[static_cast<std::size_t>(piv) * m + k]))
                piv = i;
        const double p = b[static_cast<std::size_t>(piv) * m + k];
        if (std::abs(p) < 1e-11) throw std::runtime_error("lp: singular basis on refactorization");
        if (piv != k) {
            for (int c = 0; c < m; ++c) {
                std::swap(b[static_cast<std::size_t>(piv) * m + c],
                          b[static_cast<std::size_t>(k) * m + c]);
                std::swap(inv[static_cast<std::size_t>(piv) * m + c],
                          inv[static_cast<std::size_t>(k) * m + c]);
            }
        }
        const double inv_p = 1.0 / b[static_cast<std::size_t>(k) * m + k];
        for (int c = 0; c < m; ++c) {
            b[static_cast<std::size_t>(k) * m + c] *= inv_p;
            inv[static_cast<std::size_t>(k) * m + c] *= inv_p;
        }
        for (int i = 0; i < m; ++i) {
            if (i == k) continue;
            const double f = b[static_cast<std::size_t>(i) * m + k];
            if (f == 0.0) continue;
            for (int c = 0; c < m; ++c) {
                b[static_cast<std::size_t>(i) * m + c] -= f * b[static_cast<std::size_t>(k) * m + c];
                inv[static_cast<std::size_t>(i) * m + c] -=
                    f * inv[static_cast<std::size_t>(k) * m + c];
            }
        }
    }
    binv_ = std::move(inv);
    // recompute basic values from scratch
    for (int i = 0; i < m; ++i) {
        double v = 0.0;
        for (int r = 0; r < m; ++r)
            v += binv_[static_cast<std::size_t>(i) * m + r] * row_sign_[r] * rhs_[r];
        xb_[i] = std::abs(v) < 1e-12 ? 0.0 : v;
    }
    pivots_since_refactor_ = 0;
}

std::vector<double> LpSolver::compute_duals(bool phase1) const {
    const int m = num_rows();
    std::vector<double> y(m, 0.0);
    for (int i = 0; i < m; ++i) {
        const double cb = basis_[i] < 0 ? (phase1 ? 1.0 : 0.0) : internal_obj(basis_[i], phase1);
        if (cb == 0.0) continue;
        for (int r = 0; r < m; ++r) y[r] += cb * binv_[static_cast<std::size_t>(i) * m + r];
    }
    return y;
}

std::vector<double> LpSolver::ftran(int j) const {
    const int m = num_rows();
    const int ns = num_internal_cols() - num_columns();
    std::vector<double> alpha(m, 0.0);
    const auto accumulate = [&](int r, double v) {
        for (int i = 0; i < m; ++i) alpha[i] += binv_[static_cast<std::size_t>(i) * m + r] * v;
    };
    if (j < ns) {
        const int r = surplus_rows()[j];
        accumulate(r, -row_sign_[r]);
    } else {
        for (const auto& [r, v] : cols_[j - ns].coeffs) accumulate(r, row_sign_[r] * v);
    }
    return alpha;
}

void LpSolver::pivot(int row, int j, const std::vector<double>& alpha) {
    const int m = num_rows();
    const double p = alpha[row];
    const double inv_p = 1.0 / p;
    for (int c = 0; c < m; ++c) binv_[static_cast<std::size_t>(row) * m + c] *= inv_p;
    for (int i = 0; i < m; ++i) {
        if (i == row) continue;
        const double f = alpha[i];
        if (f == 0.0) continue;
        for (int c = 0; c < m; ++c)
            binv_[static_cast<std::size_t>(i) * m + c] -=
                f * binv_[static_cast<std::size_t>(row) * m + c];
    }
    if (basis_[row] >= 0) in_basis_[basis_[row]] = false;
    basis_[row] = j;
    in_basis_[j] = true;
    ++pivots_;
    if (++pivots_since_refactor_ >= kRefactorEvery) refactorize();
}

bool LpSolver::run_phase(bool phase1) {
    const int m = num_rows();
    const int ncols = num_internal_cols();
    const int ns = ncols - num_columns();
    const std::vector<int> surplus = surplus_rows();
    bool bland = false;
    long phase_pivots = 0;
    while (true) {
        if (++phase_pivots > kPivotLimit)
            throw std::runtime_error("lp: pivot limit exceeded, numerical failure");
        if (!phase1 && pivot_cap_ > 0 && phase_pivots > pivot_cap_) {
            cap_hit_ = true;  // stop at the current feasible point
            return true;
        }
        const std::vector<double> y = compute_duals(phase1);
        // entering variable: Dantzig by default, Bland after a long
        // degenerate streak
        int enter = -1;
        double best_rc = -kEnterTol;
        for (int j = 0; j < ncols; ++j) {
            if (in_basis_[j]) continue;
            double rc;
            if (j < ns) {
                const int r = surplus[j];
                rc = y[r] * row_sign_[r];  // surplus coefficient is -row_sign
            } else {
                const Column& col = cols_[j - ns];
                rc = phase1 ? 0.0 : col.obj;
                for (const auto& [r, v] : col.coeffs) rc -= y[r] * row_sign_[r] * v;
            }
            if (rc < best_rc) {
                enter = j;
                best_rc = rc;
                if (bland) break;
            }
        }
        if (enter < 0) return true;

        const std::vector<double> alpha = ftran(enter);

        int leave = -1;
        double theta = std::numeric_limits<double>::infinity();
        if (!phase1) {
            // never let a basic artificial move away from zero: pivot it
            // out at ratio zero, on either sign of the pivot element
            double best_mag = kArtifTol;
            for (int i = 0; i < m; ++i)
                if (basis_[i] < 0 && std::abs(alpha[i]) > best_mag) {
                    best_mag = std::abs(alpha[i]);
                    leave = i;
                }
            if (leave >= 0) theta = 0.0;
        }
        if (leave < 0) {
            // Bland's anti-cycling leaving rule needs a fixed total order
            // on variables; artificials sort after every real column
            const auto var_order = [&](int i) {
                return basis_[i] >= 0 ? basis_[i] : ncols + (-1 - basis_[i]);
            };
            const auto ratio_test = [&](double min_pivot) {
                for (int i = 0; i < m; ++i) {
                    if (alpha[i] <= min_pivot) continue;
                    const double ratio = std::max(xb_[i], 0.0) / alpha[i];
                    if (ratio < theta - 1e-12) {
                        theta = ratio;
                        leave = i;
                    } else if (ratio < theta + 1e-12 && leave >= 0) {
                        if (bland) {
                            if (var_order(i) < var_order(leave)) leave = i;
                        } else if ((basis_[i] < 0) > (basis_[leave] < 0)) {
                            leave = i;  // prefer kicking artificials out
                        } else if ((basis_[i] < 0) == (basis_[leave] < 0) &&
                                   std::abs(alpha[i]) > std::abs(alpha[leave])) {
                            leave = i;  // stability tie-break: larger pivot element
                        }
                    }
                }
            };
            ratio_test(1e-7);  // shun tiny pivots while a solid one exists
            if (leave < 0) ratio_test(kPivotTol);
        }
        if (leave < 0) {
            if (phase1) throw std::runtime_error("lp: phase-1 unbounded, numerical failure");
            return false;  // unbounded
        }

        for (int i = 0; i < m; ++i) {
            xb_[i] -= theta * alpha[i];
            if (std::abs(xb_[i]) < 1e-12) xb_[i] = 0.0;
        }
        xb_[leave] = theta;
        pivot(leave, enter, alpha);

        if (theta < kPivotTol) {
            if (++degenerate_streak_ >= kBlandAfter) bland = true;
        } else {
            degenerate_streak_ = 0;
            bland = false;
        }
    }
}

const LpResult& LpSolver::solve() {
    const bool warm = basis_valid_;
    try {
        return solve_impl();
    } catch (const std::runtime_error&) {
        // capped solves are heuristic; their callers handle the failure
        if (!warm || pivot_cap_ > 0) throw;
        // a degraded warm basis can go numerically singular; one retry
        // from scratch resolves that, anything else is a real failure
        basis_valid_ = false;
        return solve_impl();
    }
}

const LpResult& LpSolver::solve_impl() {
    const int m = num_rows();
    cap_hit_ = false;
    if (!basis_valid_)
        cold_start();
    else if (static_cast<int>(in_basis_.size()) != num_internal_cols())
        in_basis_.resize(num_internal_cols(), false);

    auto artificial_sum = [&] {
        double s = 0.0;
        for (int i = 0; i < m; ++i)
            if (basis_[i] < 0) s += std::max(xb_[i], 0.0);
        return s;
    };

    if (artificial_sum() > tol::feasibility) {
        run_phase(true);
        if (artificial_sum() > tol::feasibility) {
            const std::vector<double> y = compute_duals(true);
            result_ = LpResult{};
            result_.status = LpStatus::Infeasible;
            result_.farkas_ray.resize(m);
            for (int r = 0; r < m; ++r) result_.farkas_ray[r] = row_sign_[r] * y[r];
            return result_;
        }
    }

    if (!run_phase(false)) {
        result_ = LpResult{};
        result_.status = LpStatus::Unbounded;
        return result_;
    }

    result_ = LpResult{};
    result_.status = LpStatus::Optimal;
    result_.truncated = cap_hit_;
    result_.primal.assign(num_columns(), 0.0);
    const int ns = num_internal_cols() - num_columns();
    for (int i = 0; i < m; ++i)
        if (basis_[i] >= ns) result_.primal[basis_[i] - ns] = std::max(xb_[i], 0.0);
    double obj = 0.0;
    for (int jcol = 0; jcol < num_columns(); ++jcol) obj += obj_[jcol] * result_.primal[jcol];
    result_.objective = obj;
    const std::vector<double> y = compute_duals(false);
    result_.duals.resize(m);
    for (int r = 0; r < m; ++r) result_.duals[r] = row_sign_[r] * y[r];
    return result_;
}

void LpSolver::dump_lp(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "Minimize\n obj:";
    for (int j = 0; j < num_columns(); ++j) {
        if (obj_[j] == 0.0) continue;
        out << (obj_[j] >= 0 ? " + " : " - ") << std::abs(obj_[j]) << " x" << j;
    }
    out << "\nSubject To\n";
    std::vector<SparseVec> rows(num_rows());
    for (int j = 0; j < num_columns(); ++j)
        for (const auto& [r, v] : cols_[j].coeffs) rows[r].emplace_back(j, v);
    for (int r = 0; r < num_rows(); ++r) {
        out << " c" << r << ":";
        for (const auto& [j, v] : rows[r])
            out << (v >= 0 ? " + " : " - ") << std::abs(v) << " x" << j;
        out << (sense_[r] == RowSense::Equal ? " = " : " >= ") << rhs_[r] << "\n";
    }
    out << "Bounds\n";
    for (int j = 0; j < num_columns(); ++j) out << " 0 <= x" << j << "\n";
    out << "End\n";
}

}  // namespace rrsched
