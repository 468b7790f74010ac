#include "rrsched/formulations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace rrsched {

bool AssignMatrix::integral() const {
    for (const double v : values_)
        if (std::abs(v - std::round(v)) > tol::integrality) return false;
    return true;
}

std::pair<std::vector<int>, int> ColumnPool::key(const PerfectMatching& matching, int round) {
    std::vector<int> flat;
    flat.reserve(2 * matching.size());
    for (const Match& m : matching) {
        flat.push_back(m.i);
        flat.push_back(m.j);
    }
    return {std::move(flat), round};
}

int ColumnPool::insert(PerfectMatching matching, int round, std::int64_t cost) {
    std::sort(matching.begin(), matching.end());
    auto k = key(matching, round);
    if (const auto it = index_.find(k); it != index_.end()) return it->second;
    const int idx = static_cast<int>(cols_.size());
    cols_.push_back(MatchingColumn{std::move(matching), round, cost});
    index_.emplace(std::move(k), idx);
    return idx;
}

bool ColumnPool::contains(const PerfectMatching& matching, int round) const {
    PerfectMatching sorted = matching;
    std::sort(sorted.begin(), sorted.end());
    return index_.count(key(sorted, round)) > 0;
}

TraditionalLp build_traditional_lp(const Instance& inst) {
    const int n = inst.n();
    TraditionalLp lp;
    lp.n = n;
    lp.solver = std::make_unique<LpSolver>();
    for (int m = 0; m < inst.matches(); ++m) lp.solver->add_row(1.0, RowSense::Equal);
    for (int i = 0; i < n; ++i)
        for (int r = 0; r < inst.rounds(); ++r) lp.solver->add_row(1.0, RowSense::Equal);
    for (int m = 0; m < inst.matches(); ++m) {
        const Match match = match_at(n, m);
        for (int r = 0; r < inst.rounds(); ++r) {
            const SparseVec coeffs = {{lp.match_row(m), 1.0},
                                      {lp.team_round_row(match.i, r), 1.0},
                                      {lp.team_round_row(match.j, r), 1.0}};
            lp.solver->add_column(static_cast<double>(inst.cost(m, r)), coeffs);
        }
    }
    return lp;
}

RelaxationResult solve_traditional_relaxation(const Instance& inst) {
    TraditionalLp lp = build_traditional_lp(inst);
    const LpResult& res = lp.solver->solve();
    if (res.status != LpStatus::Optimal)
        throw std::runtime_error("traditional relaxation did not solve to optimality");
    RelaxationResult out{res.objective, AssignMatrix(inst.n())};
    for (int m = 0; m < inst.matches(); ++m)
        for (int r = 0; r < inst.rounds(); ++r) out.assign.at(m, r) = res.primal[lp.col(m, r)];
    return out;
}

namespace {

// dense instances can make a penalized warm resolve stall for 10^4..10^5
// degenerate pivots; well-behaved resolves finish in well under 1000
constexpr long kChildBoundPivotCap = 2000;

bool column_respects_decisions(const MatchingColumn& col,
                               const std::vector<BranchDecision>& decisions) {
    for (const auto& d : decisions) {
        if (d.round != col.round) continue;
        const bool in = std::binary_search(col.matching.begin(), col.matching.end(), d.match);
        if (d.kind == DecisionKind::Forbid && in) return false;
        if (d.kind == DecisionKind::Enforce && !in) return false;
    }
    return true;
}

std::int64_t matching_cost(const Instance& inst, const PerfectMatching& pm, int round) {
    std::int64_t c = 0;
    for (const Match& m : pm) c += inst.cost(m, round);
    return c;
}

}  // namespace

MatchingMaster::MatchingMaster(const Instance& inst, std::vector<BranchDecision> decisions,
                               ColumnPool& pool)
    : inst_(&inst), decisions_(std::move(decisions)), pool_(&pool) {
    // objective used to neutralize child-violating columns during
    // strong-branching warm starts; above any schedule cost but small
    // enough not to wreck the simplex tolerances
    double total = 0.0;
    for (const auto c : inst.costs()) total += std::abs(static_cast<double>(c));
    penalty_ = 1000.0 + 2.0 * total;
    const int n = inst.n();
    const int nrounds = inst.rounds();
    reduced_.reserve(nrounds);
    const WeightedGraph complete = WeightedGraph::complete(n);
    for (int r = 0; r < nrounds; ++r) {
        std::vector<BranchDecision> per_round;
        for (const auto& d : decisions_)
            if (d.round == r) per_round.push_back(d);
        reduced_.push_back(apply_decisions(complete, per_round));
    }

    for (int r = 0; r < nrounds; ++r) rmp_.solver.add_row(1.0, RowSense::Equal);
    for (int m = 0; m < inst.matches(); ++m) rmp_.solver.add_row(1.0, RowSense::Equal);
    for (int idx = 0; idx < static_cast<int>(pool_->columns().size()); ++idx)
        if (column_respects_decisions(pool_->columns()[idx], decisions_)) add_to_rmp(rmp_, idx);
}

void MatchingMaster::add_to_rmp(Rmp& rmp, int pool_idx) {
    const int n = inst_->n();
    const int nrounds = inst_->rounds();
    const MatchingColumn& col = pool_->columns()[pool_idx];
    SparseVec coeffs;
    coeffs.reserve(1 + col.matching.size());
    coeffs.emplace_back(col.round, 1.0);
    for (const Match& m : col.matching) coeffs.emplace_back(nrounds + match_index(n, m), 1.0);
    rmp.solver.add_column(static_cast<double>(col.cost), coeffs);
    rmp.lp_to_pool.push_back(pool_idx);
    rmp.in_rmp.insert(pool_idx);
}

MatchingLpSolution MatchingMaster::run(Rmp& rmp, const std::vector<WeightedGraph>& graphs,
                                       MatchingCgStats* stats, int max_pricing_rounds,
                                       bool penalized_child) {
    const int n = inst_->n();
    const int nrounds = inst_->rounds();
    int pricing_rounds = 0;

    const LpResult* res = nullptr;
    while (true) {
        res = &rmp.solver.solve();
        ++pricing_rounds;
        if (stats) ++stats->pricing_rounds;
        if (res->truncated) break;  // capped solve: duals are unusable for pricing
        if (max_pricing_rounds > 0 && pricing_rounds >= max_pricing_rounds) {
            if (stats) stats->pricing_cap_hit = true;
            break;
        }

        bool added = false;
        if (res->status == LpStatus::Infeasible) {
            if (penalized_child)
                throw std::runtime_error("matching CG: penalized child master infeasible");
            const std::vector<double>& ray = res->farkas_ray;
            for (int r = 0; r < nrounds; ++r) {
                WeightedGraph g = graphs[r];
                for (const auto& [u, v, w] : g.edges())
                    g.set_weight(u, v, ray[nrounds + match_index(n, Match{u, v})]);
                const auto pm = max_weight_perfect_matching(g);
                if (!pm) continue;
                if (ray[r] + pm->second > tol::reduced_cost) {
                    if (pool_->contains(pm->first, r) && rmp.in_rmp.count(pool_->insert(pm->first, r, 0)) > 0)
                        throw std::runtime_error(
                            "matching CG: Farkas pricing regenerated a master column");
                    const int idx =
                        pool_->insert(pm->first, r, matching_cost(*inst_, pm->first, r));
                    add_to_rmp(rmp, idx);
                    added = true;
                }
            }
            if (!added) {
                MatchingLpSolution sol;
                sol.feasible = false;
                if (stats) stats->lp_pivots = rmp.solver.pivot_count();
                return sol;
            }
        } else if (res->status == LpStatus::Optimal) {
            const std::vector<double>& duals = res->duals;
            for (int r = 0; r < nrounds; ++r) {
                WeightedGraph g = graphs[r];
                for (const auto& [u, v, w] : g.edges()) {
                    const Match m{u, v};
                    g.set_weight(u, v, duals[nrounds + match_index(n, m)] -
                                           static_cast<double>(inst_->cost(m, r)));
                }
                const auto pm = max_weight_perfect_matching(g);
                if (!pm) continue;
                if (pm->second > -duals[r] + tol::reduced_cost) {
                    if (pool_->contains(pm->first, r) &&
                        rmp.in_rmp.count(pool_->insert(pm->first, r, 0)) > 0 && !penalized_child)
                        throw std::runtime_error(
                            "matching CG: pricing regenerated a master column with negative "
                            "reduced cost (tolerance problem)");
                    const int idx =
                        pool_->insert(pm->first, r, matching_cost(*inst_, pm->first, r));
                    if (rmp.in_rmp.count(idx) == 0) {
                        add_to_rmp(rmp, idx);
                        added = true;
                    }
                }
            }
            if (!added) break;
        } else {
            throw std::runtime_error("matching CG: unexpected LP status");
        }
    }

    MatchingLpSolution sol;
    sol.feasible = res->status == LpStatus::Optimal;
    sol.objective = res->objective;
    if (sol.feasible) {
        for (int j = 0; j < static_cast<int>(rmp.lp_to_pool.size()); ++j) {
            const double v = res->primal[j];
            if (v > 1e-12) sol.columns.emplace_back(pool_->columns()[rmp.lp_to_pool[j]], v);
        }
    }
    if (stats) {
        stats->lp_pivots = rmp.solver.pivot_count();
        stats->columns_added = static_cast<int>(rmp.lp_to_pool.size());
    }
    return sol;
}

MatchingLpSolution MatchingMaster::solve(MatchingCgStats* stats, int max_pricing_rounds) {
    MatchingLpSolution sol = run(rmp_, reduced_, stats, max_pricing_rounds, false);
    solved_feasible_ = sol.feasible;
    return sol;
}

double MatchingMaster::child_bound(const BranchDecision& extra, int max_pricing_rounds) {
    if (!solved_feasible_)
        throw std::logic_error("child_bound requires a prior feasible solve()");
    std::vector<WeightedGraph> graphs = reduced_;
    graphs[extra.round] = apply_decisions(reduced_[extra.round], {extra});

    Rmp child = rmp_;
    const std::vector<BranchDecision> only_extra = {extra};
    for (int j = 0; j < static_cast<int>(child.lp_to_pool.size()); ++j)
        if (!column_respects_decisions(pool_->columns()[child.lp_to_pool[j]], only_extra))
            child.solver.set_objective(j, penalty_);

    // the bound only feeds a branching score, so a suboptimal (over-
    // estimating) value is acceptable: cap the simplex work instead of
    // grinding through degenerate stalls, and write off numerical
    // failures as "infeasible child"
    child.solver.set_pivot_cap(kChildBoundPivotCap);
    MatchingLpSolution sol;
    try {
        sol = run(child, graphs, nullptr, max_pricing_rounds, true);
    } catch (const std::runtime_error&) {
        return std::numeric_limits<double>::infinity();
    }
    if (!sol.feasible) return std::numeric_limits<double>::infinity();
    // a violating column at positive value means the filtered child has no
    // cheap completion: infeasible for bounding purposes
    for (const auto& [col, value] : sol.columns)
        if (value > tol::reduced_cost && !column_respects_decisions(col, only_extra))
            return std::numeric_limits<double>::infinity();
    return sol.objective;
}

MatchingLpSolution solve_matching_relaxation(const Instance& inst,
                                             const std::vector<BranchDecision>& decisions,
                                             ColumnPool* pool, MatchingCgStats* stats,
                                             int max_pricing_rounds) {
    ColumnPool local_pool;
    MatchingMaster master(inst, decisions, pool ? *pool : local_pool);
    return master.solve(stats, max_pricing_rounds);
}

std::vector<PerfectMatching> circle_method_schedule(int n) {
    std::vector<PerfectMatching> rounds;
    for (int r = 0; r < n - 1; ++r) {
        PerfectMatching pm;
        pm.push_back(Match{std::min(r, n - 1), std::max(r, n - 1)});
        for (int k = 1; k < n / 2; ++k) {
            const int a = (r + k) % (n - 1);
            const int b = (r - k + 2 * (n - 1)) % (n - 1);
            pm.push_back(Match{std::min(a, b), std::max(a, b)});
        }
        std::sort(pm.begin(), pm.end());
        rounds.push_back(std::move(pm));
    }
    return rounds;
}

double solve_permutation_relaxation(const Instance& inst) {
    const int n = inst.n();
    const int nrounds = inst.rounds();

    LpSolver solver;
    for (int i = 0; i < n; ++i) solver.add_row(1.0, RowSense::Equal);
    for (int m = 0; m < inst.matches(); ++m)
        for (int r = 0; r < nrounds; ++r) solver.add_row(0.0, RowSense::Equal);
    const auto linking_row = [&](Match m, int r) {
        return n + match_index(n, m) * nrounds + r;
    };

    // opponent order of one team; opponents[r] is the round-r opponent
    using Perm = std::vector<int>;
    std::set<std::pair<int, Perm>> added;
    auto add_permutation_column = [&](int team, const Perm& opponents) {
        if (!added.emplace(team, opponents).second) return;
        double cost = 0.0;
        SparseVec coeffs;
        coeffs.emplace_back(team, 1.0);
        for (int r = 0; r < nrounds; ++r) {
            const int opp = opponents[r];
            const Match m{std::min(team, opp), std::max(team, opp)};
            cost += static_cast<double>(inst.cost(m, r));
            coeffs.emplace_back(linking_row(m, r), team < opp ? 1.0 : -1.0);
        }
        solver.add_column(0.5 * cost, coeffs);
    };

    // warm start from one integral schedule so the master is feasible
    const auto seed = circle_method_schedule(n);
    for (int i = 0; i < n; ++i) {
        Perm opponents(nrounds);
        for (int r = 0; r < nrounds; ++r)
            for (const Match& m : seed[r]) {
                if (m.i == i) opponents[r] = m.j;
                if (m.j == i) opponents[r] = m.i;
            }
        add_permutation_column(i, opponents);
    }

    while (true) {
        const LpResult& res = solver.solve();
        if (res.status != LpStatus::Optimal)
            throw std::runtime_error("permutation CG: master not optimal");

        bool found = false;
        for (int i = 0; i < n; ++i) {
            // assignment pricing: opponents on one side, rounds on the other
            std::vector<int> opponents;
            for (int j = 0; j < n; ++j)
                if (j != i) opponents.push_back(j);
            WeightedGraph g(2 * nrounds);
            for (int a = 0; a < nrounds; ++a)
                for (int r = 0; r < nrounds; ++r) {
                    const int j = opponents[a];
                    const Match m{std::min(i, j), std::max(i, j)};
                    const double beta = res.duals[linking_row(m, r)];
                    const double w = -0.5 * static_cast<double>(inst.cost(m, r)) +
                                     (i < j ? beta : -beta);
                    g.add_edge(a, nrounds + r, w);
                }
            const auto pm = max_weight_perfect_matching(g);
            if (!pm) throw std::runtime_error("permutation pricing: no assignment found");
            if (pm->second > -res.duals[i] + tol::reduced_cost) {
                Perm perm(nrounds);
                for (const Match& e : pm->first) perm[e.j - nrounds] = opponents[e.i];
                add_permutation_column(i, perm);
                found = true;
            }
        }
        if (!found) return res.objective;
    }
}

AssignMatrix project_to_assign(const MatchingLpSolution& sol, int n) {
    AssignMatrix assign(n);
    for (const auto& [col, value] : sol.columns)
        for (const Match& m : col.matching) assign.at(match_index(n, m), col.round) += value;
    return assign;
}

std::unique_ptr<LpSolver> build_krr_traditional_lp(const KrrInstance& kinst) {
    if (kinst.k() % 2 != 0) throw std::invalid_argument("kRR builder assumes even k");
    const int n = kinst.n();
    const int k = kinst.k();
    const int nrounds = kinst.rounds();
    const int part_len = n - 1;

    auto solver = std::make_unique<LpSolver>();
    // per ordered match frequency rows
    const auto freq_row = [&](int om) { return om; };
    for (int om = 0; om < kinst.ordered_matches(); ++om)
        solver->add_row(k / 2.0, RowSense::Equal);
    // per unordered pair and part rows (the phased requirement)
    int next = kinst.ordered_matches();
    std::vector<int> part_row_base;
    if (kinst.phased()) {
        part_row_base.resize(num_matches(n));
        for (int m = 0; m < num_matches(n); ++m) {
            part_row_base[m] = next;
            for (int part = 0; part < k; ++part) {
                solver->add_row(1.0, RowSense::Equal);
                ++next;
            }
        }
    }
    // per (team, round) rows
    const int team_row_base = next;
    for (int i = 0; i < n; ++i)
        for (int r = 0; r < nrounds; ++r) solver->add_row(1.0, RowSense::Equal);

    for (int home = 0; home < n; ++home)
        for (int away = 0; away < n; ++away) {
            if (home == away) continue;
            const int om = kinst.ordered_index(home, away);
            const int mi = match_index(n, Match{std::min(home, away), std::max(home, away)});
            for (int r = 0; r < nrounds; ++r) {
                SparseVec coeffs;
                coeffs.emplace_back(freq_row(om), 1.0);
                if (kinst.phased()) coeffs.emplace_back(part_row_base[mi] + r / part_len, 1.0);
                coeffs.emplace_back(team_row_base + home * nrounds + r, 1.0);
                coeffs.emplace_back(team_row_base + away * nrounds + r, 1.0);
                solver->add_column(static_cast<double>(kinst.cost(home, away, r)), coeffs);
            }
        }
    return solver;
}

}  // namespace rrsched
