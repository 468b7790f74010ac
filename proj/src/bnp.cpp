#include "rrsched/bnp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace rrsched {

std::int64_t Schedule::cost(const Instance& inst) const {
    std::int64_t total = 0;
    for (int r = 0; r < static_cast<int>(rounds.size()); ++r)
        for (const Match& m : rounds[r]) total += inst.cost(m, r);
    return total;
}

bool schedule_feasible(const Schedule& s, int n) {
    if (static_cast<int>(s.rounds.size()) != num_rounds(n)) return false;
    std::vector<int> seen(num_matches(n), 0);
    for (const PerfectMatching& pm : s.rounds) {
        if (static_cast<int>(pm.size()) != n / 2) return false;
        std::vector<char> covered(n, 0);
        for (const Match& m : pm) {
            if (m.i < 0 || m.j >= n || m.i >= m.j) return false;
            if (covered[m.i] || covered[m.j]) return false;
            covered[m.i] = covered[m.j] = 1;
            ++seen[match_index(n, m)];
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; });
}

double SolveReport::gap() const {
    if (!schedule) return std::numeric_limits<double>::infinity();
    return static_cast<double>(value) - best_bound;
}

BranchSelection select_branching(
    const AssignMatrix& assign, const Instance& inst, int depth, double node_obj,
    const std::function<double(const BranchDecision&)>& child_bound_fn) {
    const int nm = inst.matches();
    const int nr = inst.rounds();

    struct Entry {
        double score;
        int match_idx;
        int round;
    };
    std::vector<Entry> entries;
    entries.reserve(static_cast<std::size_t>(nm) * nr);
    bool fractional = false;
    for (int m = 0; m < nm; ++m)
        for (int r = 0; r < nr; ++r) {
            const double a = assign.at(m, r);
            const double frac = std::min(a, 1.0 - a);
            if (frac > tol::integrality) fractional = true;
            const double score =
                frac * (1.0 + std::abs(static_cast<double>(inst.cost(m, r)))) * a * a;
            entries.push_back({score, m, r});
        }
    if (!fractional) return BranchSelection{true, {}, 0};

    const auto score_argmax = [&] {
        const Entry* best = &entries.front();
        for (const Entry& e : entries)
            if (e.score > best->score) best = &e;  // canonical order keeps first on ties
        return BranchSelection{false, match_at(inst.n(), best->match_idx), best->round};
    };

    const int count = std::max(
        1, static_cast<int>(std::floor(0.1 * nm * nr * std::pow(0.65, depth))));
    if (count <= 1 || !child_bound_fn) return score_argmax();

    std::vector<Entry> ranked = entries;
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const Entry& a, const Entry& b) { return a.score > b.score; });
    ranked.resize(std::min<std::size_t>(ranked.size(), count));

    bool any = false;
    double best_star = 0.0;
    BranchSelection best{false, {}, 0};
    for (const Entry& e : ranked) {
        if (e.score <= 0.0) continue;  // Algorithm 1: skip
        const Match m = match_at(inst.n(), e.match_idx);
        const double off = child_bound_fn(BranchDecision{m, e.round, DecisionKind::Forbid});
        const double on = child_bound_fn(BranchDecision{m, e.round, DecisionKind::Enforce});
        const double star = (off - node_obj + 1.0) * (on - node_obj + 1.0);
        if (!any || star > best_star) {
            any = true;
            best_star = star;
            best = BranchSelection{false, m, e.round};
        }
    }
    return any ? best : score_argmax();
}

double child_bound(const Instance& inst, const NodeRecord& node, const BranchDecision& decision,
                   ColumnPool& pool, int pricing_cap) {
    std::vector<BranchDecision> decisions = node.decisions;
    decisions.push_back(decision);
    MatchingCgStats stats;
    const MatchingLpSolution sol =
        solve_matching_relaxation(inst, decisions, &pool, &stats, pricing_cap);
    if (!sol.feasible) return std::numeric_limits<double>::infinity();
    return sol.objective;
}

namespace {

std::optional<Schedule> extract_schedule(const MatchingLpSolution& sol, int n) {
    Schedule s;
    s.rounds.assign(num_rounds(n), {});
    for (const auto& [col, value] : sol.columns)
        if (value > 0.5) s.rounds[col.round] = col.matching;
    if (!schedule_feasible(s, n)) return std::nullopt;
    return s;
}

}  // namespace

SolveReport solve(const Instance& inst, const SolverParams& params) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    SolveReport report;
    ColumnPool pool;

    const std::int64_t no_incumbent = std::numeric_limits<std::int64_t>::max();
    std::int64_t incumbent = no_incumbent;
    std::optional<Schedule> best_schedule;

    if (params.primal_heuristic) {
        Schedule s{circle_method_schedule(inst.n())};
        incumbent = s.cost(inst);
        best_schedule = std::move(s);
    }

    struct QueuedNode {
        NodeRecord rec;
        long order;
    };
    const auto worse = [](const QueuedNode& a, const QueuedNode& b) {
        if (a.rec.lp_bound != b.rec.lp_bound) return a.rec.lp_bound > b.rec.lp_bound;
        return a.order > b.order;
    };
    std::priority_queue<QueuedNode, std::vector<QueuedNode>, decltype(worse)> open(worse);
    long order = 0;
    open.push({NodeRecord{0, {}, -std::numeric_limits<double>::infinity(), NodeStatus::Open},
               order++});
    std::optional<NodeRecord> plunge;

    const auto prunable = [&](double bound) {
        return incumbent != no_incumbent &&
               static_cast<std::int64_t>(std::ceil(bound - tol::reduced_cost)) >= incumbent;
    };

    bool exhausted = false;
    while (true) {
        NodeRecord node;
        if (plunge) {
            node = std::move(*plunge);
            plunge.reset();
        } else if (!open.empty()) {
            node = open.top().rec;
            open.pop();
        } else {
            exhausted = true;
            break;
        }

        if (params.time_limit_seconds > 0 && elapsed() > params.time_limit_seconds) {
            report.time_limit_hit = true;
            open.push({std::move(node), order++});
            break;
        }
        if (params.node_limit > 0 && report.nodes >= params.node_limit) {
            report.node_limit_hit = true;
            open.push({std::move(node), order++});
            break;
        }
        if (prunable(node.lp_bound)) continue;

        ++report.nodes;
        MatchingCgStats stats;
        MatchingMaster master(inst, node.decisions, pool);
        const MatchingLpSolution sol = master.solve(&stats);
        report.lp_pivots += stats.lp_pivots;
        if (!sol.feasible) continue;

        node.lp_bound = std::max(node.lp_bound, sol.objective);
        if (prunable(node.lp_bound)) continue;

        const AssignMatrix assign = project_to_assign(sol, inst.n());
        std::function<double(const BranchDecision&)> bound_fn;
        if (params.strong_branching)
            bound_fn = [&](const BranchDecision& d) {
                return master.child_bound(d, params.pricing_round_cap);
            };
        const BranchSelection pick =
            select_branching(assign, inst, node.depth, sol.objective, bound_fn);

        if (pick.integral) {
            const auto schedule = extract_schedule(sol, inst.n());
            if (!schedule)
                throw std::runtime_error("bnp: integral LP solution is not a schedule");
            const std::int64_t value = schedule->cost(inst);
            if (value < incumbent) {
                incumbent = value;
                best_schedule = schedule;
            }
            continue;
        }

        NodeRecord enforce{node.depth + 1, node.decisions, node.lp_bound, NodeStatus::Open};
        enforce.decisions.push_back({pick.match, pick.round, DecisionKind::Enforce});
        NodeRecord forbid{node.depth + 1, node.decisions, node.lp_bound, NodeStatus::Open};
        forbid.decisions.push_back({pick.match, pick.round, DecisionKind::Forbid});
        open.push({std::move(forbid), order++});
        plunge = std::move(enforce);
    }

    report.columns_generated = static_cast<int>(pool.columns().size());
    report.wall_seconds = elapsed();

    double open_bound = std::numeric_limits<double>::infinity();
    if (plunge) open_bound = std::min(open_bound, plunge->lp_bound);
    if (!open.empty()) open_bound = std::min(open_bound, open.top().rec.lp_bound);

    if (incumbent != no_incumbent) {
        report.value = incumbent;
        report.schedule = std::move(best_schedule);
        report.best_bound =
            exhausted ? static_cast<double>(incumbent)
                      : std::min(static_cast<double>(incumbent), open_bound);
        report.optimal = exhausted || prunable(open_bound);
        if (report.optimal) report.best_bound = static_cast<double>(incumbent);
    } else {
        report.best_bound = exhausted ? std::numeric_limits<double>::infinity() : open_bound;
        if (exhausted) throw std::runtime_error("bnp: no feasible schedule exists");
    }
    return report;
}

}  // namespace rrsched
