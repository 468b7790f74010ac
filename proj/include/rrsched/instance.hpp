#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rrsched {

/// A match is an unordered pair of teams, stored with i < j.
struct Match {
    int i = 0;
    int j = 0;

    friend bool operator==(const Match&, const Match&) = default;
    friend auto operator<=>(const Match&, const Match&) = default;
};

/// Canonical (lexicographic) index of match {i,j} among the n(n-1)/2
/// matches of an n-team tournament.
int match_index(int n, Match m);

/// Inverse of match_index.
Match match_at(int n, int index);

int num_matches(int n);
int num_rounds(int n);

/// A single round robin instance: n teams, n-1 rounds, and an integral
/// cost for every (match, round) pair. Immutable after construction.
class Instance {
public:
    Instance(int n, std::vector<std::int64_t> costs);

    /// All-zero cost table.
    static Instance zero(int n);

    int n() const { return n_; }
    int rounds() const { return n_ - 1; }
    int matches() const { return n_ * (n_ - 1) / 2; }

    std::int64_t cost(Match m, int round) const;
    std::int64_t cost(int match_idx, int round) const;

    /// Dense table, match-major then round, in canonical order.
    const std::vector<std::int64_t>& costs() const { return costs_; }

    /// Optional generator metadata, carried through save/load.
    double rho = -1.0;
    std::int64_t seed = -1;

private:
    int n_;
    std::vector<std::int64_t> costs_;
};

/// Draws exactly floor(rho * |M x R|) distinct match-round pairs uniformly
/// at random and assigns them cost 1; everything else costs 0.
/// Deterministic in (n, rho, seed): the RNG is splitmix64-seeded
/// xoshiro256** and the pair set is drawn by a partial Fisher-Yates
/// shuffle over the canonical cell ordering.
Instance generate(int n, double rho, std::uint64_t seed);

/// The dominance construction: a set P of pairs forming two 3-cycles
/// (n = 6), a 3-cycle plus a 5-cycle (n = 8), or two 3-cycles plus an
/// even cycle on the remaining teams (n >= 10). Matches outside P cost 1
/// in rounds 0 and 1, all other cells cost 0.
Instance dominance_instance(int n);

/// The pair set P used by dominance_instance, in canonical order.
std::vector<Match> dominance_pairs(int n);

void save(const Instance& inst, const std::string& path);
Instance load(const std::string& path);

/// k-round-robin instance with ordered (home, away) matches; costs for
/// (i,j) and (j,i) are independent. Rounds number k*(n-1), partitioned
/// into k consecutive parts of n-1 rounds each.
class KrrInstance {
public:
    KrrInstance(int n, int k, bool phased, std::vector<std::int64_t> ordered_costs);

    static KrrInstance zero(int n, int k, bool phased);

    /// Replicates an SRR cost table into each part, symmetrically for the
    /// two orientations of every match.
    static KrrInstance from_srr(const Instance& inst, int k, bool phased);

    int n() const { return n_; }
    int k() const { return k_; }
    bool phased() const { return phased_; }
    int rounds() const { return k_ * (n_ - 1); }
    int ordered_matches() const { return n_ * (n_ - 1); }

    /// Canonical index of ordered match (home, away).
    int ordered_index(int home, int away) const;

    std::int64_t cost(int home, int away, int round) const;

private:
    int n_;
    int k_;
    bool phased_;
    std::vector<std::int64_t> costs_;  // ordered-match-major, then round
};

}  // namespace rrsched
