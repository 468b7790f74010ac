#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rrsched/instance.hpp"

namespace rrsched {

/// A perfect matching of K_n: n/2 disjoint matches covering every team,
/// kept sorted in canonical match order.
using PerfectMatching = std::vector<Match>;

/// Simple weighted graph with support for edge deletion, the pricing
/// substrate for the matching oracle.
class WeightedGraph {
public:
    explicit WeightedGraph(int node_count);

    /// Complete graph with the given edge weight everywhere.
    static WeightedGraph complete(int node_count, double weight = 0.0);

    int nodes() const { return n_; }

    void add_edge(int u, int v, double weight);
    void set_weight(int u, int v, double weight);
    void delete_edge(int u, int v);
    bool has_edge(int u, int v) const;
    double weight(int u, int v) const;

    /// Remaining (non-deleted) edges as (u, v, weight), u < v, in
    /// canonical order.
    std::vector<std::tuple<int, int, double>> edges() const;

private:
    int edge_slot(int u, int v) const;

    int n_;
    std::vector<double> weight_;   // dense upper-triangular table
    std::vector<char> present_;
};

enum class DecisionKind { Enforce, Forbid };

/// Ryan-Foster branching unit: play (or do not play) a match in a round.
struct BranchDecision {
    Match match;
    int round = 0;
    DecisionKind kind = DecisionKind::Forbid;

    friend bool operator==(const BranchDecision&, const BranchDecision&) = default;
};

/// Maximum-weight perfect matching among the non-deleted edges, or
/// nullopt if no perfect matching exists. Galil-style blossom algorithm
/// on integer-scaled weights: inputs are rounded at 1e-9 granularity and
/// perturbed so that ties resolve toward edges that are early in
/// canonical order.
std::optional<std::pair<PerfectMatching, double>> max_weight_perfect_matching(
    const WeightedGraph& g);

/// All (n-1)!! perfect matchings of K_n, duplicate-free, in the order
/// induced by always pairing the lowest uncovered team first. Guarded to
/// n <= 12.
std::vector<PerfectMatching> enumerate_perfect_matchings(int n);

/// Applies one round's branching decisions to the pricing graph:
/// Forbid {i,j} deletes the edge, Enforce {i,j} deletes every other edge
/// incident to i or j. Throws on contradictory decisions.
WeightedGraph apply_decisions(const WeightedGraph& g,
                              const std::vector<BranchDecision>& decisions);

namespace detail {
/// Maximum-weight maximum-cardinality matching on integer weights;
/// returns mate[v] (partner or -1).
std::vector<int> max_weight_matching_int(int node_count,
                                         const std::vector<std::tuple<int, int, std::int64_t>>& edges);
}  // namespace detail

}  // namespace rrsched
