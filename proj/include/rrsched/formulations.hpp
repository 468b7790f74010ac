#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "rrsched/instance.hpp"
#include "rrsched/lp.hpp"
#include "rrsched/matching.hpp"

namespace rrsched {

/// Fractional match-to-round assignment, dense match-major table.
class AssignMatrix {
public:
    AssignMatrix(int n) : n_(n), values_(static_cast<std::size_t>(num_matches(n)) * num_rounds(n), 0.0) {}

    int n() const { return n_; }
    double& at(int match_idx, int round) { return values_[static_cast<std::size_t>(match_idx) * (n_ - 1) + round]; }
    double at(int match_idx, int round) const { return values_[static_cast<std::size_t>(match_idx) * (n_ - 1) + round]; }
    double at(Match m, int round) const { return at(match_index(n_, m), round); }

    /// True when every entry is within tol::integrality of 0 or 1.
    bool integral() const;

private:
    int n_;
    std::vector<double> values_;
};

/// One generated variable of the matching formulation: a perfect matching
/// assigned to a round, with cost d = sum of member match costs.
struct MatchingColumn {
    PerfectMatching matching;
    int round = 0;
    std::int64_t cost = 0;
};

struct MatchingLpSolution {
    bool feasible = true;
    double objective = 0.0;
    std::vector<std::pair<MatchingColumn, double>> columns;  // nonzero values only
};

/// Shared pool of generated matching columns; grows monotonically and is
/// reused across branch-and-bound nodes.
class ColumnPool {
public:
    /// Adds if not already present; returns the pool index.
    int insert(PerfectMatching matching, int round, std::int64_t cost);
    bool contains(const PerfectMatching& matching, int round) const;
    const std::vector<MatchingColumn>& columns() const { return cols_; }

private:
    static std::pair<std::vector<int>, int> key(const PerfectMatching& matching, int round);

    std::vector<MatchingColumn> cols_;
    std::map<std::pair<std::vector<int>, int>, int> index_;
};

/// Index bookkeeping for the traditional formulation LP: column (m, r) at
/// m * (n-1) + r; rows are the per-match equalities first, then the
/// per-(team, round) equalities.
struct TraditionalLp {
    std::unique_ptr<LpSolver> solver;
    int n = 0;
    int col(int match_idx, int round) const { return match_idx * (n - 1) + round; }
    int match_row(int match_idx) const { return match_idx; }
    int team_round_row(int team, int round) const { return num_matches(n) + team * (n - 1) + round; }
};

TraditionalLp build_traditional_lp(const Instance& inst);

struct RelaxationResult {
    double value = 0.0;
    AssignMatrix assign;
};

RelaxationResult solve_traditional_relaxation(const Instance& inst);

struct MatchingCgStats {
    int pricing_rounds = 0;      // master re-solves
    int columns_added = 0;
    long lp_pivots = 0;
    bool pricing_cap_hit = false;
};

/// Column-generation master for the matching formulation's LP relaxation
/// under branching decisions. The restricted master starts from the
/// decision-respecting part of the pool (initially nothing) and prices
/// via the blossom oracle: Farkas rays while infeasible, reduced costs
/// once feasible. After solve(), child_bound() evaluates a one-decision
/// child by warm-starting a copy of the master: columns violating the new
/// decision get a prohibitive objective instead of being removed, which
/// keeps the basis primal feasible.
class MatchingMaster {
public:
    MatchingMaster(const Instance& inst, std::vector<BranchDecision> decisions,
                   ColumnPool& pool);

    /// `max_pricing_rounds <= 0` means unlimited.
    MatchingLpSolution solve(MatchingCgStats* stats = nullptr, int max_pricing_rounds = 0);

    /// LP value of the child obtained by appending one decision;
    /// +infinity when the child is infeasible. Requires a prior feasible
    /// solve().
    double child_bound(const BranchDecision& extra, int max_pricing_rounds = 0);

private:
    struct Rmp {
        LpSolver solver;
        std::vector<int> lp_to_pool;
        std::set<int> in_rmp;  // pool indices present as LP columns
    };

    void add_to_rmp(Rmp& rmp, int pool_idx);
    MatchingLpSolution run(Rmp& rmp, const std::vector<WeightedGraph>& graphs,
                           MatchingCgStats* stats, int max_pricing_rounds,
                           bool penalized_child);

    const Instance* inst_;
    std::vector<BranchDecision> decisions_;
    ColumnPool* pool_;
    std::vector<WeightedGraph> reduced_;  // decision-reduced pricing graph per round
    Rmp rmp_;
    double penalty_ = 0.0;
    bool solved_feasible_ = false;
};

/// One-shot convenience wrapper around MatchingMaster::solve.
MatchingLpSolution solve_matching_relaxation(const Instance& inst,
                                             const std::vector<BranchDecision>& decisions = {},
                                             ColumnPool* pool = nullptr,
                                             MatchingCgStats* stats = nullptr,
                                             int max_pricing_rounds = 0);

/// Permutation-formulation LP value, by column generation with bipartite
/// assignment pricing per team.
double solve_permutation_relaxation(const Instance& inst);

/// Projects a matching-formulation solution to assignment space:
/// x[m][r] = sum of values of round-r columns containing m.
AssignMatrix project_to_assign(const MatchingLpSolution& sol, int n);

/// The compact kRR LP (k even): one column per ordered match and round,
/// per-ordered-match frequency rows, phased per-pair-per-part rows, and
/// per-(team, round) rows.
std::unique_ptr<LpSolver> build_krr_traditional_lp(const KrrInstance& kinst);

/// Round-robin schedule by the circle method; round r of the result is a
/// perfect matching, and every match appears exactly once.
std::vector<PerfectMatching> circle_method_schedule(int n);

}  // namespace rrsched
