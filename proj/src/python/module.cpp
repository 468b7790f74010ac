// Python bindings for the core solver entry points.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rrsched/bnp.hpp"
#include "rrsched/cuts.hpp"
#include "rrsched/formulations.hpp"
#include "rrsched/instance.hpp"

namespace py = pybind11;
using namespace rrsched;

namespace {

std::vector<std::vector<std::pair<int, int>>> schedule_to_py(const Schedule& s) {
    std::vector<std::vector<std::pair<int, int>>> out;
    for (const PerfectMatching& pm : s.rounds) {
        std::vector<std::pair<int, int>> round;
        for (const Match& m : pm) round.emplace_back(m.i, m.j);
        out.push_back(std::move(round));
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_rrsched, m) {
    m.doc() = "single round-robin tournament scheduling solvers";

    py::class_<Instance>(m, "Instance")
        .def(py::init<int, std::vector<std::int64_t>>(), py::arg("n"), py::arg("costs"))
        .def_static("zero", &Instance::zero, py::arg("n"))
        .def_property_readonly("n", &Instance::n)
        .def_property_readonly("rounds", &Instance::rounds)
        .def_property_readonly("matches", &Instance::matches)
        .def_property_readonly("costs", &Instance::costs)
        .def_readwrite("rho", &Instance::rho)
        .def_readwrite("seed", &Instance::seed)
        .def(
            "cost",
            [](const Instance& inst, int i, int j, int round) {
                return inst.cost(Match{std::min(i, j), std::max(i, j)}, round);
            },
            py::arg("i"), py::arg("j"), py::arg("round"));

    m.def("generate", &generate, py::arg("n"), py::arg("rho"), py::arg("seed"));
    m.def("dominance_instance", &dominance_instance, py::arg("n"));
    m.def("load", &load, py::arg("path"));
    m.def("save", &save, py::arg("instance"), py::arg("path"));
    m.def("num_matches", &num_matches, py::arg("n"));
    m.def("num_rounds", &num_rounds, py::arg("n"));

    m.def(
        "traditional_value",
        [](const Instance& inst) { return solve_traditional_relaxation(inst).value; },
        py::arg("instance"), "LP relaxation value of the traditional formulation");
    m.def(
        "matching_value",
        [](const Instance& inst) {
            const MatchingLpSolution sol = solve_matching_relaxation(inst);
            if (!sol.feasible) throw std::runtime_error("matching relaxation infeasible");
            return sol.objective;
        },
        py::arg("instance"), "LP relaxation value of the matching formulation");
    m.def("permutation_value", &solve_permutation_relaxation, py::arg("instance"),
          "LP relaxation value of the permutation formulation");
    m.def(
        "strengthen_traditional",
        [](const Instance& inst) {
            const StrengthenResult res = strengthen_traditional(inst);
            py::dict out;
            out["value"] = res.value;
            out["cuts_added"] = res.cuts_added;
            out["iterations"] = res.iterations;
            return out;
        },
        py::arg("instance"), "odd-cut strengthened traditional relaxation");

    m.def(
        "solve",
        [](const Instance& inst, double time_limit, long node_limit, bool strong_branching,
           bool heuristic) {
            SolverParams params;
            params.time_limit_seconds = time_limit;
            params.node_limit = node_limit;
            params.strong_branching = strong_branching;
            params.primal_heuristic = heuristic;
            const SolveReport rep = rrsched::solve(inst, params);
            py::dict out;
            out["value"] = rep.value;
            out["best_bound"] = rep.best_bound;
            out["optimal"] = rep.optimal;
            out["nodes"] = rep.nodes;
            out["columns_generated"] = rep.columns_generated;
            out["wall_seconds"] = rep.wall_seconds;
            out["time_limit_hit"] = rep.time_limit_hit;
            out["node_limit_hit"] = rep.node_limit_hit;
            out["schedule"] =
                rep.schedule ? py::cast(schedule_to_py(*rep.schedule)) : py::none().cast<py::object>();
            return out;
        },
        py::arg("instance"), py::arg("time_limit") = 0.0, py::arg("node_limit") = 0,
        py::arg("strong_branching") = true, py::arg("heuristic") = false,
        "branch-and-price exact solve");

    m.def(
        "circle_method_schedule",
        [](int n) {
            Schedule s{circle_method_schedule(n)};
            return schedule_to_py(s);
        },
        py::arg("n"));
}
