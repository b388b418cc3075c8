#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "freqest/fourier.hpp"
#include "freqest/grid.hpp"
#include "freqest/lona.hpp"
#include "freqest/objective.hpp"
#include "freqest/pso.hpp"
#include "freqest/simulator.hpp"

namespace py = pybind11;
using namespace freqest;

PYBIND11_MODULE(_core, m) {
    m.doc() = "qubit frequency estimation schedule toolkit";
    m.attr("OMEGA0") = kOmega0;

    py::enum_<Outcome>(m, "Outcome")
        .value("Plus", Outcome::Plus)
        .value("Minus", Outcome::Minus);

    py::enum_<Engine>(m, "Engine")
        .value("Fourier", Engine::Fourier)
        .value("Grid", Engine::Grid);

    py::class_<Moments>(m, "Moments")
        .def_readonly("mean", &Moments::mean)
        .def_readonly("second_moment", &Moments::second_moment)
        .def_readonly("variance", &Moments::variance);

    m.def("outcome_probability", &outcome_probability, py::arg("t"), py::arg("omega"),
          py::arg("outcome"));
    m.def("dt_to_times", &dt_to_times);
    m.def("times_to_dt", &times_to_dt);
    m.def("is_feasible", &is_feasible);

    py::class_<FourierPosterior>(m, "FourierPosterior")
        .def_static("flat_prior", &FourierPosterior::flat_prior)
        .def("updated", &FourierPosterior::updated, py::arg("m"), py::arg("outcome"))
        .def("evaluate_at", &FourierPosterior::evaluate_at)
        .def("total_mass", &FourierPosterior::total_mass)
        .def("moments", &FourierPosterior::moments)
        .def_property_readonly("coeffs", &FourierPosterior::coeffs)
        .def_property_readonly("bandwidth", &FourierPosterior::bandwidth)
        .def_property_readonly("measurement_count", &FourierPosterior::measurement_count);

    py::class_<GridPosterior>(m, "GridPosterior")
        .def_static("flat_prior", &GridPosterior::flat_prior, py::arg("grid_size"))
        .def("updated", &GridPosterior::updated, py::arg("t"), py::arg("outcome"))
        .def("total_mass", &GridPosterior::total_mass)
        .def("moments", &GridPosterior::moments)
        .def_property_readonly("values", &GridPosterior::values)
        .def_property_readonly("grid_size", &GridPosterior::grid_size);

    py::class_<ObjectiveReport>(m, "ObjectiveReport")
        .def_readonly("expected_variance", &ObjectiveReport::expected_variance)
        .def_readonly("branch_count", &ObjectiveReport::branch_count)
        .def_readonly("method", &ObjectiveReport::method)
        .def_readonly("stderr", &ObjectiveReport::stderr_value);

    m.def("expected_variance_exact", &expected_variance_exact, py::arg("schedule"),
          py::arg("engine"), py::arg("grid_size") = kDefaultGridSize,
          py::arg("enumeration_cap") = kDefaultEnumerationCap);
    m.def("expected_variance_mc", &expected_variance_mc, py::arg("schedule"),
          py::arg("samples"), py::arg("seed"), py::arg("grid_size") = kDefaultGridSize);

    py::class_<LonaTrace>(m, "LonaTrace")
        .def_readonly("schedule", &LonaTrace::schedule)
        .def_readonly("per_step_ev", &LonaTrace::per_step_ev)
        .def_readonly("search_bound_used", &LonaTrace::search_bound_used);

    m.def("best_next_time", &best_next_time, py::arg("prefix"), py::arg("m_max"),
          py::arg("enumeration_cap") = kDefaultEnumerationCap);
    m.def("lona_schedule", &lona_schedule, py::arg("n"),
          py::arg("enumeration_cap") = kDefaultEnumerationCap);

    m.def("constriction_factor", &constriction_factor, py::arg("c1"), py::arg("c2"));

    py::enum_<InitMode>(m, "InitMode")
        .value("Range", InitMode::Range)
        .value("AroundSchedule", InitMode::AroundSchedule);

    py::class_<PsoConfig>(m, "PsoConfig")
        .def(py::init<>())
        .def_readwrite("swarm_size", &PsoConfig::swarm_size)
        .def_readwrite("c1", &PsoConfig::c1)
        .def_readwrite("c2", &PsoConfig::c2)
        .def_readwrite("v_max", &PsoConfig::v_max)
        .def_readwrite("penalty", &PsoConfig::penalty)
        .def_readwrite("init", &PsoConfig::init)
        .def_readwrite("dt1_max", &PsoConfig::dt1_max)
        .def_readwrite("dti_max", &PsoConfig::dti_max)
        .def_readwrite("base", &PsoConfig::base)
        .def_readwrite("radius", &PsoConfig::radius)
        .def_readwrite("iterations", &PsoConfig::iterations)
        .def_readwrite("seed", &PsoConfig::seed)
        .def_readwrite("per_dimension_r", &PsoConfig::per_dimension_r);

    py::class_<SwarmTrace>(m, "SwarmTrace")
        .def_readonly("best_value", &SwarmTrace::best_value)
        .def_readonly("mean_value", &SwarmTrace::mean_value)
        .def_readonly("spread", &SwarmTrace::spread);

    py::class_<PsoResult>(m, "PsoResult")
        .def_readonly("best_schedule", &PsoResult::best_schedule)
        .def_readonly("best_value", &PsoResult::best_value)
        .def_readonly("trace", &PsoResult::trace);

    m.def("optimize", &optimize, py::arg("config"), py::arg("dim"), py::arg("objective"));

    // Ready-made E[V] objective for optimize(), avoiding a Python round trip
    // per evaluation.
    m.def("grid_ev_objective", [](int grid_size, int cap) {
        return ScheduleObjective([grid_size, cap](const Schedule& s) {
            return expected_variance_exact(s, Engine::Grid, grid_size, cap)
                .expected_variance;
        });
    }, py::arg("grid_size") = kDefaultGridSize,
       py::arg("enumeration_cap") = kDefaultEnumerationCap);

    py::class_<TrajectoryRecord>(m, "TrajectoryRecord")
        .def_readonly("true_omega", &TrajectoryRecord::true_omega)
        .def_readonly("schedule", &TrajectoryRecord::schedule)
        .def_readonly("outcomes", &TrajectoryRecord::outcomes)
        .def_readonly("final_mean", &TrajectoryRecord::final_mean)
        .def_readonly("final_variance", &TrajectoryRecord::final_variance)
        .def_readonly("squared_error", &TrajectoryRecord::squared_error);

    py::class_<BenchmarkResult>(m, "BenchmarkResult")
        .def_readonly("mean_squared_error", &BenchmarkResult::mean_squared_error)
        .def_readonly("mean_posterior_variance", &BenchmarkResult::mean_posterior_variance)
        .def_readonly("stderr", &BenchmarkResult::stderr_value)
        .def_readonly("trials", &BenchmarkResult::trials);

    m.def("run_trajectory", &run_trajectory, py::arg("schedule"), py::arg("true_omega"),
          py::arg("seed"), py::arg("grid_size") = kDefaultGridSize);
    m.def("benchmark_schedule", &benchmark_schedule, py::arg("schedule"),
          py::arg("trials"), py::arg("seed"), py::arg("grid_size") = kDefaultGridSize);
}
