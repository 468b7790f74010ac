#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "rrsched/formulations.hpp"
#include "rrsched/instance.hpp"
#include "rrsched/matching.hpp"

namespace rrsched {

enum class NodeStatus { Open, Pruned, Branched, Integral, Infeasible };

struct NodeRecord {
    int depth = 0;
    std::vector<BranchDecision> decisions;
    double lp_bound = 0.0;
    NodeStatus status = NodeStatus::Open;
};

/// One perfect matching per round; every match played exactly once.
struct Schedule {
    std::vector<PerfectMatching> rounds;

    std::int64_t cost(const Instance& inst) const;
};

bool schedule_feasible(const Schedule& s, int n);

struct SolverParams {
    double time_limit_seconds = 0.0;  // <= 0: unlimited
    long node_limit = 0;              // <= 0: unlimited
    int pricing_round_cap = 50;       // strong-branching child solves only
    bool strong_branching = true;
    bool primal_heuristic = false;    // circle-method incumbent seed
};

struct SolveReport {
    std::int64_t value = 0;
    std::optional<Schedule> schedule;
    double best_bound = 0.0;
    bool optimal = false;
    bool time_limit_hit = false;
    bool node_limit_hit = false;
    long nodes = 0;
    long lp_pivots = 0;
    int columns_generated = 0;
    double wall_seconds = 0.0;

    double gap() const;
};

struct BranchSelection {
    bool integral = false;
    Match match{};
    int round = 0;
};

/// Candidate selection on a node's fractional assignment. With
/// frac = min(assign, 1-assign) every cell is scored
/// frac * (1 + |c|) * assign^2; the candidate count shrinks with depth as
/// max{1, floor(0.1 * |M x R| * 0.65^d)}. When more than one candidate
/// survives and a child-bound callback is supplied, the top-scored cells
/// are strong-branched with score* = (obj_forbid - obj + 1) *
/// (obj_enforce - obj + 1); zero-scored candidates are skipped, and if
/// every candidate was skipped the plain score argmax decides. Ties go to
/// the canonically smallest (match, round).
BranchSelection select_branching(
    const AssignMatrix& assign, const Instance& inst, int depth, double node_obj,
    const std::function<double(const BranchDecision&)>& child_bound = {});

/// LP bound of the child node obtained by appending one decision;
/// +infinity when the child relaxation is infeasible. A positive pricing
/// cap turns the value into a best-effort estimate (used only inside
/// strong branching, never for pruning).
double child_bound(const Instance& inst, const NodeRecord& node, const BranchDecision& decision,
                   ColumnPool& pool, int pricing_cap = 0);

/// Branch-and-price over the matching formulation with Ryan-Foster
/// branching: best-bound node selection with depth-first plunging into
/// the Enforce child, a global column pool filtered per node, and
/// integral-cost pruning.
SolveReport solve(const Instance& inst, const SolverParams& params = {});

}  // namespace rrsched
