#include "rrsched/instance.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace rrsched {

namespace {

void check_team_count(int n) {
    if (n < 4 || n % 2 != 0)
        throw std::invalid_argument("team count must be even and >= 4, got " + std::to_string(n));
}

// splitmix64, used to seed the main generator.
std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256** by Blackman and Vigna.
class Xoshiro256 {
public:
    explicit Xoshiro256(std::uint64_t seed) {
        for (auto& word : s_) word = splitmix64(seed);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Unbiased integer in [0, bound) by rejection sampling.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % bound;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % bound;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t s_[4];
};

}  // namespace

int num_matches(int n) { return n * (n - 1) / 2; }
int num_rounds(int n) { return n - 1; }

int match_index(int n, Match m) {
    if (m.i < 0 || m.i >= m.j || m.j >= n)
        throw std::invalid_argument("invalid match");
    // lexicographic on (i, j): i blocks of decreasing length
    return m.i * n - m.i * (m.i + 1) / 2 + (m.j - m.i - 1);
}

Match match_at(int n, int index) {
    for (int i = 0; i < n - 1; ++i) {
        const int block = n - 1 - i;
        if (index < block) return Match{i, i + 1 + index};
        index -= block;
    }
    throw std::invalid_argument("match index out of range");
}

Instance::Instance(int n, std::vector<std::int64_t> costs) : n_(n), costs_(std::move(costs)) {
    check_team_count(n);
    const std::size_t expected =
        static_cast<std::size_t>(num_matches(n)) * static_cast<std::size_t>(num_rounds(n));
    if (costs_.size() != expected)
        throw std::invalid_argument("cost table has wrong size");
}

Instance Instance::zero(int n) {
    check_team_count(n);
    return Instance(n, std::vector<std::int64_t>(
                           static_cast<std::size_t>(num_matches(n)) * num_rounds(n), 0));
}

std::int64_t Instance::cost(Match m, int round) const {
    return cost(match_index(n_, m), round);
}

std::int64_t Instance::cost(int match_idx, int round) const {
    return costs_[static_cast<std::size_t>(match_idx) * rounds() + round];
}

Instance generate(int n, double rho, std::uint64_t seed) {
    check_team_count(n);
    if (!(rho > 0.0 && rho < 1.0))
        throw std::invalid_argument("rho must lie in (0, 1)");

    const int cells = num_matches(n) * num_rounds(n);
    const int ones = static_cast<int>(std::floor(rho * cells));

    // Partial Fisher-Yates: the first `ones` positions end up holding a
    // uniform random subset of the cells.
    std::vector<int> perm(cells);
    std::iota(perm.begin(), perm.end(), 0);
    Xoshiro256 rng(seed);
    for (int t = 0; t < ones; ++t) {
        const int pick = t + static_cast<int>(rng.below(static_cast<std::uint64_t>(cells - t)));
        std::swap(perm[t], perm[pick]);
    }

    std::vector<std::int64_t> costs(static_cast<std::size_t>(cells), 0);
    for (int t = 0; t < ones; ++t) costs[static_cast<std::size_t>(perm[t])] = 1;

    Instance inst(n, std::move(costs));
    inst.rho = rho;
    inst.seed = static_cast<std::int64_t>(seed);
    return inst;
}

std::vector<Match> dominance_pairs(int n) {
    if (n < 6 || n % 2 != 0)
        throw std::invalid_argument("dominance construction needs even n >= 6");
    std::vector<Match> pairs;
    auto cycle = [&pairs](std::vector<int> nodes) {
        for (std::size_t t = 0; t < nodes.size(); ++t) {
            int a = nodes[t], b = nodes[(t + 1) % nodes.size()];
            pairs.push_back(Match{std::min(a, b), std::max(a, b)});
        }
    };
    if (n == 8) {
        cycle({0, 1, 2});
        cycle({3, 4, 5, 6, 7});
    } else {
        cycle({0, 1, 2});
        cycle({3, 4, 5});
        if (n >= 10) {
            std::vector<int> rest;
            for (int t = 6; t < n; ++t) rest.push_back(t);
            cycle(std::move(rest));
        }
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

Instance dominance_instance(int n) {
    const std::vector<Match> pairs = dominance_pairs(n);
    Instance inst = Instance::zero(n);
    std::vector<std::int64_t> costs = inst.costs();
    for (int mi = 0; mi < num_matches(n); ++mi) {
        const Match m = match_at(n, mi);
        const bool in_p = std::binary_search(pairs.begin(), pairs.end(), m);
        if (!in_p) {
            costs[static_cast<std::size_t>(mi) * num_rounds(n) + 0] = 1;
            costs[static_cast<std::size_t>(mi) * num_rounds(n) + 1] = 1;
        }
    }
    return Instance(n, std::move(costs));
}

void save(const Instance& inst, const std::string& path) {
    nlohmann::json j;
    j["n"] = inst.n();
    j["rounds"] = inst.rounds();
    j["costs"] = inst.costs();
    if (inst.rho >= 0.0) j["rho"] = inst.rho;
    if (inst.seed >= 0) j["seed"] = inst.seed;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << j.dump(2) << '\n';
}

Instance load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(path + ": malformed instance file: " + e.what());
    }
    if (!j.contains("n") || !j.contains("rounds") || !j.contains("costs"))
        throw std::runtime_error(path + ": missing required field");
    const int n = j["n"].get<int>();
    if (n < 4 || n % 2 != 0)
        throw std::runtime_error(path + ": team count must be even and >= 4");
    if (j["rounds"].get<int>() != n - 1)
        throw std::runtime_error(path + ": round count inconsistent with team count");
    auto costs = j["costs"].get<std::vector<std::int64_t>>();
    if (costs.size() != static_cast<std::size_t>(num_matches(n)) * num_rounds(n))
        throw std::runtime_error(path + ": cost table has wrong size");
    Instance inst(n, std::move(costs));
    if (j.contains("rho")) inst.rho = j["rho"].get<double>();
    if (j.contains("seed")) inst.seed = j["seed"].get<std::int64_t>();
    return inst;
}

KrrInstance::KrrInstance(int n, int k, bool phased, std::vector<std::int64_t> ordered_costs)
    : n_(n), k_(k), phased_(phased), costs_(std::move(ordered_costs)) {
    check_team_count(n);
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    const std::size_t expected =
        static_cast<std::size_t>(ordered_matches()) * static_cast<std::size_t>(rounds());
    if (costs_.size() != expected)
        throw std::invalid_argument("ordered cost table has wrong size");
}

KrrInstance KrrInstance::zero(int n, int k, bool phased) {
    check_team_count(n);
    return KrrInstance(n, k, phased,
                       std::vector<std::int64_t>(
                           static_cast<std::size_t>(n * (n - 1)) * (k * (n - 1)), 0));
}

KrrInstance KrrInstance::from_srr(const Instance& inst, int k, bool phased) {
    const int n = inst.n();
    KrrInstance out = KrrInstance::zero(n, k, phased);
    for (int home = 0; home < n; ++home)
        for (int away = 0; away < n; ++away) {
            if (home == away) continue;
            const Match m{std::min(home, away), std::max(home, away)};
            for (int part = 0; part < k; ++part)
                for (int r = 0; r < n - 1; ++r) {
                    const int round = part * (n - 1) + r;
                    out.costs_[static_cast<std::size_t>(out.ordered_index(home, away)) *
                                   out.rounds() +
                               round] = inst.cost(m, r);
                }
        }
    return out;
}

int KrrInstance::ordered_index(int home, int away) const {
    if (home < 0 || home >= n_ || away < 0 || away >= n_ || home == away)
        throw std::invalid_argument("invalid ordered match");
    return home * (n_ - 1) + (away < home ? away : away - 1);
}

std::int64_t KrrInstance::cost(int home, int away, int round) const {
    return costs_[static_cast<std::size_t>(ordered_index(home, away)) * rounds() + round];
}

}  // namespace rrsched
