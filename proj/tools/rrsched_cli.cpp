// rrsched command-line harness: instance generation, relaxation
// comparison tables, branch-and-price runs, and benchmark summaries.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rrsched/bnp.hpp"
#include "rrsched/formulations.hpp"
#include "rrsched/instance.hpp"

namespace {

using namespace rrsched;

// DFS over one perfect matching per round with match-disjointness
// pruning; exact IP optimum, practical up to n = 6.
std::int64_t exhaustive_optimum(const Instance& inst) {
    const int n = inst.n();
    const auto matchings = enumerate_perfect_matchings(n);
    std::vector<std::int64_t> best{std::numeric_limits<std::int64_t>::max()};
    std::vector<char> used(inst.matches(), 0);

    const auto rec = [&](const auto& self, int round, std::int64_t cost) -> void {
        if (cost >= best[0]) return;
        if (round == inst.rounds()) {
            best[0] = cost;
            return;
        }
        for (const PerfectMatching& pm : matchings) {
            bool ok = true;
            std::int64_t add = 0;
            for (const Match& m : pm) {
                const int idx = match_index(n, m);
                if (used[idx]) {
                    ok = false;
                    break;
                }
                add += inst.cost(idx, round);
            }
            if (!ok) continue;
            for (const Match& m : pm) used[match_index(n, m)] = 1;
            self(self, round + 1, cost + add);
            for (const Match& m : pm) used[match_index(n, m)] = 0;
        }
    };
    rec(rec, 0, 0);
    return best[0];
}

std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

struct ExperimentRow {
    int n = 0;
    double rho = -1.0;
    std::int64_t seed = -1;
    double v_tra = 0.0, v_per = 0.0, v_mat = 0.0;
    std::optional<double> v_ip;
    std::optional<double> rgap;
    double seconds = 0.0;
    long nodes = 0;
    std::string status = "ok";
};

int cmd_gen(int n, double rho, int count, std::int64_t seed0, const std::string& outdir) {
    std::filesystem::create_directories(outdir);
    for (int i = 0; i < count; ++i) {
        const std::int64_t seed = seed0 + i;
        Instance inst = generate(n, rho, static_cast<std::uint64_t>(seed));
        char name[128];
        std::snprintf(name, sizeof(name), "srr_n%d_rho%.2f_seed%lld.json", n, rho,
                      static_cast<long long>(seed));
        save(inst, (std::filesystem::path(outdir) / name).string());
    }
    std::cout << "wrote " << count << " instance(s) to " << outdir << "\n";
    return 0;
}

int cmd_compare(const std::vector<std::string>& files, bool with_ip, bool use_oracle,
                bool with_times, const std::string& out_path) {
    std::vector<ExperimentRow> rows;
    bool any_error = false;
    for (const std::string& file : files) {
        ExperimentRow row;
        try {
            const Instance inst = load(file);
            row.n = inst.n();
            row.rho = inst.rho;
            row.seed = inst.seed;
            const auto t0 = std::chrono::steady_clock::now();
            row.v_tra = solve_traditional_relaxation(inst).value;
            row.v_per = solve_permutation_relaxation(inst);
            row.v_mat = solve_matching_relaxation(inst).objective;
            if (with_ip) {
                if (use_oracle && inst.n() <= 6) {
                    row.v_ip = static_cast<double>(exhaustive_optimum(inst));
                } else {
                    const SolveReport rep = solve(inst);
                    row.v_ip = static_cast<double>(rep.value);
                    row.nodes = rep.nodes;
                }
                if (*row.v_ip - row.v_tra > 1e-6)
                    row.rgap = (row.v_mat - row.v_tra) / (*row.v_ip - row.v_tra);
            }
            row.seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        } catch (const std::exception& e) {
            row.status = std::string("error: ") + e.what();
            any_error = true;
        }
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(), [](const ExperimentRow& a, const ExperimentRow& b) {
        return std::tie(a.n, a.rho, a.seed) < std::tie(b.n, b.rho, b.seed);
    });

    std::ostringstream csv;
    csv << "n,rho,seed,v_tra,v_per,v_mat,v_ip,rgap,time,nodes,status\n";
    for (const ExperimentRow& r : rows) {
        csv << r.n << ',' << format_value(r.rho) << ',' << r.seed << ','
            << format_value(r.v_tra) << ',' << format_value(r.v_per) << ','
            << format_value(r.v_mat) << ',' << (r.v_ip ? format_value(*r.v_ip) : "") << ','
            << (r.rgap ? format_value(*r.rgap) : "") << ','
            << (with_times ? format_value(r.seconds) : "") << ',' << r.nodes << ',' << r.status
            << '\n';
    }

    // per-(n, rho) footer mirroring the usual comparison-table columns
    std::map<std::pair<int, double>, std::vector<const ExperimentRow*>> groups;
    for (const ExperimentRow& r : rows)
        if (r.status == "ok") groups[{r.n, r.rho}].push_back(&r);
    for (const auto& [key, group] : groups) {
        double s_tra = 0, s_per = 0, s_mat = 0, s_ip = 0, s_rgap = 0, max_rgap = 0;
        int n_ip = 0, n_rgap = 0, n_gap = 0;
        for (const ExperimentRow* r : group) {
            s_tra += r->v_tra;
            s_per += r->v_per;
            s_mat += r->v_mat;
            if (r->v_ip) {
                s_ip += *r->v_ip;
                ++n_ip;
                if (*r->v_ip > r->v_tra + 1e-6) ++n_gap;
            }
            if (r->rgap) {
                s_rgap += *r->rgap;
                max_rgap = std::max(max_rgap, *r->rgap);
                ++n_rgap;
            }
        }
        const double cnt = static_cast<double>(group.size());
        csv << "# n=" << key.first << " rho=" << format_value(key.second)
            << " count=" << group.size() << " avg_v_tra=" << format_value(s_tra / cnt)
            << " avg_v_per=" << format_value(s_per / cnt)
            << " avg_v_mat=" << format_value(s_mat / cnt);
        if (n_ip > 0)
            csv << " avg_v_ip=" << format_value(s_ip / n_ip) << " gap_count=" << n_gap;
        if (n_rgap > 0)
            csv << " avg_rgap=" << format_value(s_rgap / n_rgap)
                << " max_rgap=" << format_value(max_rgap);
        csv << '\n';
    }

    if (out_path.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot write " << out_path << "\n";
            return 1;
        }
        out << csv.str();
    }
    return any_error ? 1 : 0;
}

int cmd_solve(const std::string& file, const SolverParams& params) {
    Instance inst = load(file);
    const SolveReport rep = solve(inst, params);

    if (rep.schedule) {
        std::cout << "optimum " << rep.value << (rep.optimal ? "" : " (incumbent)") << "\n";
        for (int r = 0; r < static_cast<int>(rep.schedule->rounds.size()); ++r) {
            std::cout << "round " << r << ":";
            for (const Match& m : rep.schedule->rounds[r])
                std::cout << " {" << m.i << "," << m.j << "}";
            std::cout << "\n";
        }
    } else {
        std::cout << "no incumbent\n";
    }
    if (!rep.optimal)
        std::cout << (rep.time_limit_hit ? "time" : "node") << " limit hit, best bound "
                  << format_value(rep.best_bound) << ", gap " << format_value(rep.gap()) << "\n";
    std::cout << "nodes " << rep.nodes << ", columns " << rep.columns_generated << ", pivots "
              << rep.lp_pivots << ", time " << format_value(rep.wall_seconds) << "s\n";
    // machine-readable row
    std::cout << "RESULT," << inst.n() << ',' << format_value(inst.rho) << ',' << inst.seed
              << ',' << rep.value << ',' << format_value(rep.best_bound) << ','
              << (rep.optimal ? "optimal" : "limit") << ',' << rep.nodes << ','
              << format_value(rep.wall_seconds) << "\n";
    return rep.optimal ? 0 : 2;
}

double shifted_geo_mean(const std::vector<double>& times, double shift) {
    if (times.empty()) return 0.0;
    double log_sum = 0.0;
    for (const double t : times) log_sum += std::log(t + shift);
    return std::exp(log_sum / static_cast<double>(times.size())) - shift;
}

int cmd_bench(const std::vector<std::string>& files, const SolverParams& params) {
    struct Group {
        std::vector<double> times;
        int solved = 0;
        int limited = 0;
        int errored = 0;
    };
    std::map<std::pair<int, double>, Group> groups;
    bool any_error = false;
    for (const std::string& file : files) {
        try {
            const Instance inst = load(file);
            const SolveReport rep = solve(inst, params);
            Group& g = groups[{inst.n(), inst.rho}];
            g.times.push_back(rep.wall_seconds);
            if (rep.optimal)
                ++g.solved;
            else
                ++g.limited;
        } catch (const std::exception& e) {
            std::cerr << file << ": " << e.what() << "\n";
            any_error = true;
        }
    }
    std::cout << "n,rho,count,solved,limit,min_time,sgm_time,max_time\n";
    for (const auto& [key, g] : groups) {
        const auto [mn, mx] = std::minmax_element(g.times.begin(), g.times.end());
        std::cout << key.first << ',' << format_value(key.second) << ',' << g.times.size()
                  << ',' << g.solved << ',' << g.limited << ','
                  << format_value(g.times.empty() ? 0.0 : *mn) << ','
                  << format_value(shifted_geo_mean(g.times, 10.0)) << ','
                  << format_value(g.times.empty() ? 0.0 : *mx) << "\n";
    }
    return any_error ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"single round-robin scheduling solver suite"};
    app.require_subcommand(1);

    int n = 6;
    double rho = 0.5;
    int count = 1;
    std::int64_t seed0 = 1;
    std::string outdir = ".";
    auto* gen = app.add_subcommand("gen", "generate random instances");
    gen->add_option("-n,--teams", n, "number of teams (even)")->required();
    gen->add_option("-r,--rho", rho, "fraction of unit-cost cells")->required();
    gen->add_option("-c,--count", count, "number of instances");
    gen->add_option("-s,--seed", seed0, "first seed");
    gen->add_option("-o,--outdir", outdir, "output directory");

    std::vector<std::string> files;
    bool with_ip = false, use_oracle = false, with_times = false;
    std::string out_path;
    auto* compare = app.add_subcommand("compare", "LP relaxation comparison table");
    compare->add_option("files", files, "instance files")->required();
    compare->add_flag("--ip", with_ip, "also compute the IP optimum");
    compare->add_flag("--oracle", use_oracle, "exhaustive IP oracle for n <= 6");
    compare->add_flag("--times", with_times, "emit wall times (breaks byte determinism)");
    compare->add_option("-o,--output", out_path, "CSV output path (default stdout)");

    SolverParams params;
    bool no_strong = false;
    std::string solve_file;
    auto* solve_cmd = app.add_subcommand("solve", "branch-and-price one instance");
    solve_cmd->add_option("file", solve_file, "instance file")->required();

    auto* bench = app.add_subcommand("bench", "solve a batch, report time summaries");
    bench->add_option("files", files, "instance files")->required();

    for (auto* sub : {solve_cmd, bench}) {
        sub->add_option("--time-limit", params.time_limit_seconds, "seconds, 0 = off");
        sub->add_option("--node-limit", params.node_limit, "0 = off");
        sub->add_option("--pricing-cap", params.pricing_round_cap,
                        "strong-branching pricing round cap");
        sub->add_flag("--no-strong-branching", no_strong, "plain score-based branching");
        sub->add_flag("--heuristic", params.primal_heuristic, "seed a circle-method incumbent");
    }

    CLI11_PARSE(app, argc, argv);
    params.strong_branching = !no_strong;

    try {
        if (gen->parsed()) return cmd_gen(n, rho, count, seed0, outdir);
        if (compare->parsed()) return cmd_compare(files, with_ip, use_oracle, with_times, out_path);
        if (solve_cmd->parsed()) return cmd_solve(solve_file, params);
        if (bench->parsed()) return cmd_bench(files, params);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
