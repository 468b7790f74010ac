#pragma once

#include <optional>
#include <vector>

#include "rrsched/formulations.hpp"
#include "rrsched/instance.hpp"

namespace rrsched {

/// Odd team subset U with 3 <= |U| <= n-3, paired with a round; the
/// matches crossing U in that round must carry total value >= 1.
struct OddCut {
    std::vector<int> teams;  // sorted, odd cardinality
    int round = 0;
};

/// Chvatal-Gomory cut for the matching formulation, parameterized by a
/// set A of pairwise disjoint matches and a set B of rounds with
/// |A| + |B| odd.
struct CgCut {
    std::vector<Match> matches;  // A, sorted canonical
    std::vector<int> rounds;     // B, sorted
};

double odd_cut_value(const AssignMatrix& x, const std::vector<int>& teams, int round);

/// Most violated odd cut for one round among all odd subsets (exact
/// enumeration for n <= 12, triangle-growing heuristic beyond), or
/// nullopt when no cut is violated by more than the tolerance.
std::optional<OddCut> separate_odd_cut(const AssignMatrix& x, int round);

struct StrengthenResult {
    double value = 0.0;
    int cuts_added = 0;
    int iterations = 0;
};

/// Cutting-plane loop on the traditional relaxation: solve, separate odd
/// cuts over all rounds, add every violated cut, repeat until none is
/// violated. Throws if the iteration cap is exceeded.
StrengthenResult strengthen_traditional(const Instance& inst, int max_iterations = 200);

/// Left- and right-hand side of a CG cut in a fractional matching
/// solution: rounds in B weight a column by ceil((1+|M cap A|)/2), other
/// rounds by ceil(|M cap A|/2); rhs = (1+|A|+|B|)/2.
std::pair<double, double> evaluate_cg_cut(const CgCut& cut, const MatchingLpSolution& sol);

/// All violated cuts of the simple family (A = {m1, m2} disjoint,
/// B = {r'}), enumerated in canonical order.
std::vector<CgCut> separate_simple_cg(const MatchingLpSolution& sol, int n);

/// The fractional vertex of the n=6 matching relaxation used to
/// demonstrate a violated CG cut: ten columns, two per round, each with
/// value 1/2, transcribed from the published figure. Costs are zero
/// (the point is instance-independent).
MatchingLpSolution example1_solution();

}  // namespace rrsched
