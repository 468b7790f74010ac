#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "rrsched/lp.hpp"

using namespace rrsched;

TEST_CASE("single equality: min x s.t. x = 1") {
    LpSolver lp;
    lp.add_column(1.0, {});
    lp.add_row(1.0, RowSense::Equal, {{0, 1.0}});
    const LpResult& res = lp.solve();
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.objective == doctest::Approx(1.0));
    CHECK(res.primal[0] == doctest::Approx(1.0));
    CHECK(res.duals[0] == doctest::Approx(1.0));
}

TEST_CASE("contradictory equalities yield a Farkas certificate") {
    LpSolver lp;
    lp.add_column(0.0, {});
    lp.add_column(0.0, {});
    lp.add_row(1.0, RowSense::Equal, {{0, 1.0}, {1, 1.0}});
    lp.add_row(3.0, RowSense::Equal, {{0, 1.0}, {1, 1.0}});
    const LpResult& res = lp.solve();
    REQUIRE(res.status == LpStatus::Infeasible);
    REQUIRE(res.farkas_ray.size() == 2);
    // certificate: ray . rhs > 0 while ray . col <= 0 for every column
    const double ray_rhs = res.farkas_ray[0] * 1.0 + res.farkas_ray[1] * 3.0;
    CHECK(ray_rhs > tol::feasibility);
    for (int j = 0; j < 2; ++j) {
        const double ray_col = res.farkas_ray[0] + res.farkas_ray[1];
        CHECK(ray_col <= tol::feasibility);
        (void)j;
    }
}

TEST_CASE("unbounded below is detected") {
    LpSolver lp;
    lp.add_column(-1.0, {});
    lp.add_column(0.0, {});
    // x0 - x1 = 0 keeps the problem feasible while x0 runs away
    lp.add_row(0.0, RowSense::Equal, {{0, 1.0}, {1, -1.0}});
    CHECK(lp.solve().status == LpStatus::Unbounded);
}

TEST_CASE(">= rows get surplus variables and correct duals") {
    LpSolver lp;
    lp.add_column(2.0, {});
    lp.add_column(3.0, {});
    lp.add_row(4.0, RowSense::GreaterEqual, {{0, 1.0}, {1, 1.0}});
    lp.add_row(1.0, RowSense::GreaterEqual, {{1, 1.0}});
    const LpResult& res = lp.solve();
    REQUIRE(res.status == LpStatus::Optimal);
    // best: x1 = 1 (forced), x0 = 3
    CHECK(res.objective == doctest::Approx(9.0));
    CHECK(res.primal[0] == doctest::Approx(3.0));
    CHECK(res.primal[1] == doctest::Approx(1.0));
    CHECK(res.duals[0] == doctest::Approx(2.0));
    CHECK(res.duals[1] == doctest::Approx(1.0));
}

TEST_CASE("zero-coefficient column stays at zero when costly") {
    LpSolver lp;
    lp.add_column(1.0, {});
    lp.add_column(5.0, {});  // appears in no row
    lp.add_row(2.0, RowSense::Equal, {{0, 1.0}});
    const LpResult& res = lp.solve();
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.objective == doctest::Approx(2.0));
    CHECK(res.primal[1] == doctest::Approx(0.0));
}

TEST_CASE("duplicate rows do not break the solve") {
    LpSolver lp;
    lp.add_column(1.0, {});
    lp.add_column(1.0, {});
    lp.add_row(1.0, RowSense::Equal, {{0, 1.0}, {1, 1.0}});
    lp.add_row(1.0, RowSense::Equal, {{0, 1.0}, {1, 1.0}});
    const LpResult& res = lp.solve();
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.objective == doctest::Approx(1.0));
}

TEST_CASE("column generation pattern: add_column warm-starts") {
    LpSolver lp;
    lp.add_row(1.0, RowSense::Equal, {});
    lp.add_row(1.0, RowSense::Equal, {});
    CHECK(lp.solve().status == LpStatus::Infeasible);
    lp.add_column(4.0, {{0, 1.0}});
    CHECK(lp.solve().status == LpStatus::Infeasible);
    lp.add_column(5.0, {{1, 1.0}});
    const LpResult& res = lp.solve();
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.objective == doctest::Approx(9.0));
    // a cheaper column priced in afterwards improves the optimum
    lp.add_column(2.0, {{0, 1.0}, {1, 1.0}});
    const LpResult& res2 = lp.solve();
    REQUIRE(res2.status == LpStatus::Optimal);
    CHECK(res2.objective == doctest::Approx(2.0));
}

TEST_CASE("set_objective keeps the basis usable") {
    LpSolver lp;
    lp.add_column(1.0, {});
    lp.add_column(2.0, {});
    lp.add_row(1.0, RowSense::Equal, {{0, 1.0}, {1, 1.0}});
    CHECK(lp.solve().objective == doctest::Approx(1.0));
    lp.set_objective(0, 10.0);
    const LpResult& res = lp.solve();
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.objective == doctest::Approx(2.0));
    CHECK(res.primal[1] == doctest::Approx(1.0));
}

namespace {

struct RandomLp {
    LpSolver lp;
    int nrows, ncols;
    std::vector<double> rhs;
    std::vector<RowSense> sense;
    std::vector<double> c;
    std::vector<std::vector<double>> a;  // row-major dense
};

// random LP with a known feasible point, so Optimal/Unbounded are the
// only possible outcomes
RandomLp make_random_lp(std::mt19937& rng) {
    RandomLp out;
    std::uniform_int_distribution<int> rows_d(1, 5), cols_d(2, 8);
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    std::uniform_real_distribution<double> point(0.0, 2.0);
    out.nrows = rows_d(rng);
    out.ncols = cols_d(rng);
    std::vector<double> x0(out.ncols);
    for (double& v : x0) v = point(rng);
    out.a.assign(out.nrows, std::vector<double>(out.ncols));
    for (int j = 0; j < out.ncols; ++j) {
        out.c.push_back(coef(rng));
        out.lp.add_column(out.c.back(), {});
    }
    for (int r = 0; r < out.nrows; ++r) {
        double lhs = 0.0;
        SparseVec row;
        for (int j = 0; j < out.ncols; ++j) {
            out.a[r][j] = coef(rng);
            lhs += out.a[r][j] * x0[j];
            row.emplace_back(j, out.a[r][j]);
        }
        const bool geq = rng() % 2 == 0;
        out.sense.push_back(geq ? RowSense::GreaterEqual : RowSense::Equal);
        out.rhs.push_back(geq ? lhs - point(rng) : lhs);
        out.lp.add_row(out.rhs.back(), out.sense.back(), row);
    }
    return out;
}

}  // namespace

TEST_CASE("random feasible LPs: residuals, duality, sign conventions") {
    std::mt19937 rng(20240817);
    int optimal_seen = 0;
    for (int trial = 0; trial < 200; ++trial) {
        RandomLp r = make_random_lp(rng);
        const LpResult& res = r.lp.solve();
        REQUIRE(res.status != LpStatus::Infeasible);  // built around a feasible point
        if (res.status != LpStatus::Optimal) continue;
        ++optimal_seen;
        // primal feasibility
        for (int row = 0; row < r.nrows; ++row) {
            double lhs = 0.0;
            for (int j = 0; j < r.ncols; ++j) lhs += r.a[row][j] * res.primal[j];
            if (r.sense[row] == RowSense::Equal)
                CHECK(std::abs(lhs - r.rhs[row]) < 1e-6);
            else
                CHECK(lhs > r.rhs[row] - 1e-6);
        }
        for (int j = 0; j < r.ncols; ++j) CHECK(res.primal[j] > -1e-9);
        // strong duality: c'x = y'b, with y >= 0 on >= rows
        double dual_obj = 0.0;
        for (int row = 0; row < r.nrows; ++row) {
            dual_obj += res.duals[row] * r.rhs[row];
            if (r.sense[row] == RowSense::GreaterEqual) CHECK(res.duals[row] > -1e-6);
        }
        CHECK(std::abs(dual_obj - res.objective) < 1e-5);
        // dual feasibility: reduced costs nonnegative
        for (int j = 0; j < r.ncols; ++j) {
            double rc = r.c[j];
            for (int row = 0; row < r.nrows; ++row) rc -= res.duals[row] * r.a[row][j];
            CHECK(rc > -1e-5);
        }
    }
    CHECK(optimal_seen > 50);  // the family is not degenerate
}

TEST_CASE("re-solving without changes is deterministic") {
    std::mt19937 rng(7);
    RandomLp r = make_random_lp(rng);
    const LpResult first = r.lp.solve();
    const LpResult second = r.lp.solve();
    CHECK(first.status == second.status);
    if (first.status == LpStatus::Optimal) {
        CHECK(first.objective == second.objective);
        CHECK(first.primal == second.primal);
    }
}

TEST_CASE("pivot counter is monotone") {
    LpSolver lp;
    lp.add_column(1.0, {});
    lp.add_row(1.0, RowSense::Equal, {{0, 1.0}});
    const long before = lp.pivot_count();
    lp.solve();
    CHECK(lp.pivot_count() >= before);
}

TEST_CASE("argument validation") {
    LpSolver lp;
    lp.add_column(0.0, {});
    CHECK_THROWS(lp.add_row(1.0, RowSense::Equal, {{3, 1.0}}));
    CHECK_THROWS(lp.add_column(0.0, {{5, 1.0}}));
    CHECK_THROWS(lp.set_objective(9, 1.0));
}

TEST_CASE("dump_lp writes a readable model") {
    LpSolver lp;
    lp.add_column(1.5, {});
    lp.add_column(-2.0, {});
    lp.add_row(1.0, RowSense::Equal, {{0, 1.0}, {1, 1.0}});
    lp.add_row(0.5, RowSense::GreaterEqual, {{1, 2.0}});
    const auto path = (std::filesystem::temp_directory_path() / "rrsched_dump.lp").string();
    lp.dump_lp(path);
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    CHECK(text.find("Minimize") != std::string::npos);
    CHECK(text.find("Subject To") != std::string::npos);
    CHECK(text.find(">=") != std::string::npos);
    CHECK(text.find("x1") != std::string::npos);
    std::filesystem::remove(path);
}

TEST_CASE("pivot cap truncates and a later uncapped solve finishes the job") {
    LpSolver lp;
    for (int i = 0; i < 4; ++i) {
        const int s = lp.add_column(0.0, {});  // slack, enters in phase 1
        lp.add_row(1.0, RowSense::Equal, {{s, 1.0}});
        lp.add_column(-1.0, {{i, 1.0}});
    }
    lp.set_pivot_cap(1);
    const LpResult& capped = lp.solve();
    REQUIRE(capped.status == LpStatus::Optimal);
    CHECK(capped.truncated);
    CHECK(capped.objective > -4.0 + 1e-9);  // stopped short of the optimum

    lp.set_pivot_cap(0);
    const LpResult& full = lp.solve();  // warm continuation
    REQUIRE(full.status == LpStatus::Optimal);
    CHECK_FALSE(full.truncated);
    CHECK(full.objective == doctest::Approx(-4.0));
}
