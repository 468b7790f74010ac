#include "rrsched/cuts.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rrsched {

double odd_cut_value(const AssignMatrix& x, const std::vector<int>& teams, int round) {
    const int n = x.n();
    std::vector<char> in_u(n, 0);
    for (const int t : teams) in_u[t] = 1;
    double total = 0.0;
    for (const int i : teams)
        for (int j = 0; j < n; ++j)
            if (!in_u[j]) total += x.at(Match{std::min(i, j), std::max(i, j)}, round);
    return total;
}

namespace {

std::vector<int> mask_to_teams(unsigned mask, int n) {
    std::vector<int> teams;
    for (int t = 0; t < n; ++t)
        if (mask & (1u << t)) teams.push_back(t);
    return teams;
}

// cut value for a subset given the per-round slice of x
double cut_value_mask(const AssignMatrix& x, unsigned mask, int n, int round) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        if (!(mask & (1u << i))) continue;
        for (int j = 0; j < n; ++j)
            if (!(mask & (1u << j)) && j != i)
                total += x.at(Match{std::min(i, j), std::max(i, j)}, round);
    }
    return total;
}

std::optional<OddCut> separate_exact(const AssignMatrix& x, int round) {
    const int n = x.n();
    double best = 1.0 - tol::reduced_cost;
    unsigned best_mask = 0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        const int size = __builtin_popcount(mask);
        if (size % 2 == 0 || size < 3 || size > n - 3) continue;
        const double v = cut_value_mask(x, mask, n, round);
        if (v < best) {
            best = v;
            best_mask = mask;
        }
    }
    if (best_mask == 0) return std::nullopt;
    return OddCut{mask_to_teams(best_mask, n), round};
}

std::optional<OddCut> separate_heuristic(const AssignMatrix& x, int round) {
    const int n = x.n();
    double best = 1.0 - tol::reduced_cost;
    unsigned best_mask = 0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c) {
                unsigned mask = (1u << a) | (1u << b) | (1u << c);
                double value = cut_value_mask(x, mask, n, round);
                if (value < best) {
                    best = value;
                    best_mask = mask;
                }
                // grow by pairs while it helps and stays below n-3 teams
                while (__builtin_popcount(mask) + 2 <= n - 3) {
                    unsigned grown = 0;
                    double grown_value = value;
                    for (int u = 0; u < n; ++u) {
                        if (mask & (1u << u)) continue;
                        for (int v = u + 1; v < n; ++v) {
                            if (mask & (1u << v)) continue;
                            const unsigned cand = mask | (1u << u) | (1u << v);
                            const double cv = cut_value_mask(x, cand, n, round);
                            if (cv < grown_value) {
                                grown_value = cv;
                                grown = cand;
                            }
                        }
                    }
                    if (grown == 0) break;
                    mask = grown;
                    value = grown_value;
                    if (value < best) {
                        best = value;
                        best_mask = mask;
                    }
                }
            }
    if (best_mask == 0) return std::nullopt;
    return OddCut{mask_to_teams(best_mask, n), round};
}

}  // namespace

std::optional<OddCut> separate_odd_cut(const AssignMatrix& x, int round) {
    return x.n() <= 12 ? separate_exact(x, round) : separate_heuristic(x, round);
}

StrengthenResult strengthen_traditional(const Instance& inst, int max_iterations) {
    TraditionalLp lp = build_traditional_lp(inst);
    const int n = inst.n();
    StrengthenResult out;
    for (out.iterations = 1; out.iterations <= max_iterations; ++out.iterations) {
        const LpResult& res = lp.solver->solve();
        if (res.status != LpStatus::Optimal)
            throw std::runtime_error("strengthen_traditional: LP not optimal");
        out.value = res.objective;

        AssignMatrix x(n);
        for (int m = 0; m < inst.matches(); ++m)
            for (int r = 0; r < inst.rounds(); ++r) x.at(m, r) = res.primal[lp.col(m, r)];

        bool violated = false;
        for (int r = 0; r < inst.rounds(); ++r) {
            const auto cut = separate_odd_cut(x, r);
            if (!cut) continue;
            violated = true;
            std::vector<char> in_u(n, 0);
            for (const int t : cut->teams) in_u[t] = 1;
            SparseVec coeffs;
            for (const int i : cut->teams)
                for (int j = 0; j < n; ++j)
                    if (!in_u[j])
                        coeffs.emplace_back(
                            lp.col(match_index(n, Match{std::min(i, j), std::max(i, j)}), r), 1.0);
            lp.solver->add_row(1.0, RowSense::GreaterEqual, coeffs);
            ++out.cuts_added;
        }
        if (!violated) return out;
    }
    throw std::runtime_error("strengthen_traditional: iteration cap exceeded");
}

std::pair<double, double> evaluate_cg_cut(const CgCut& cut, const MatchingLpSolution& sol) {
    for (std::size_t a = 0; a < cut.matches.size(); ++a)
        for (std::size_t b = a + 1; b < cut.matches.size(); ++b) {
            const Match& ma = cut.matches[a];
            const Match& mb = cut.matches[b];
            if (ma == mb || ma.i == mb.i || ma.i == mb.j || ma.j == mb.i || ma.j == mb.j)
                throw std::invalid_argument("CG cut: matches in A must be pairwise disjoint");
        }
    if ((cut.matches.size() + cut.rounds.size()) % 2 == 0)
        throw std::invalid_argument("CG cut: |A| + |B| must be odd");

    double lhs = 0.0;
    for (const auto& [col, value] : sol.columns) {
        int overlap = 0;
        for (const Match& m : cut.matches)
            if (std::binary_search(col.matching.begin(), col.matching.end(), m)) ++overlap;
        const bool in_b = std::binary_search(cut.rounds.begin(), cut.rounds.end(), col.round);
        const int coeff = in_b ? (1 + overlap + 1) / 2 : (overlap + 1) / 2;
        lhs += coeff * value;
    }
    const double rhs = (1.0 + cut.matches.size() + cut.rounds.size()) / 2.0;
    return {lhs, rhs};
}

std::vector<CgCut> separate_simple_cg(const MatchingLpSolution& sol, int n) {
    std::vector<CgCut> out;
    const int nm = num_matches(n);
    for (int a = 0; a < nm; ++a) {
        const Match m1 = match_at(n, a);
        for (int b = a + 1; b < nm; ++b) {
            const Match m2 = match_at(n, b);
            if (m1.i == m2.i || m1.i == m2.j || m1.j == m2.i || m1.j == m2.j) continue;
            for (int r = 0; r < num_rounds(n); ++r) {
                CgCut cut{{m1, m2}, {r}};
                const auto [lhs, rhs] = evaluate_cg_cut(cut, sol);
                if (lhs < rhs - tol::reduced_cost) out.push_back(std::move(cut));
            }
        }
    }
    return out;
}

MatchingLpSolution example1_solution() {
    // two matchings per round at value 1/2, teams 0..5
    const std::vector<std::pair<int, PerfectMatching>> cols = {
        {0, {{0, 5}, {1, 4}, {2, 3}}},
        {0, {{0, 3}, {1, 5}, {2, 4}}},
        {1, {{0, 4}, {1, 2}, {3, 5}}},
        {1, {{0, 4}, {1, 3}, {2, 5}}},
        {2, {{0, 2}, {1, 4}, {3, 5}}},
        {2, {{0, 2}, {1, 5}, {3, 4}}},
        {3, {{0, 5}, {1, 3}, {2, 4}}},
        {3, {{0, 1}, {2, 3}, {4, 5}}},
        {4, {{0, 1}, {2, 5}, {3, 4}}},
        {4, {{0, 3}, {1, 2}, {4, 5}}},
    };
    MatchingLpSolution sol;
    sol.feasible = true;
    sol.objective = 0.0;
    for (const auto& [round, pm] : cols)
        sol.columns.emplace_back(MatchingColumn{pm, round, 0}, 0.5);
    return sol;
}

}  // namespace rrsched
