#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "amplest/harness.hpp"
#include "amplest/json_io.hpp"
#include "amplest/likelihood.hpp"
#include "amplest/planner.hpp"
#include "amplest/sampler.hpp"
#include "amplest/schedule.hpp"
#include "amplest/special_functions.hpp"
#include "amplest/statevector.hpp"

namespace py = pybind11;
using namespace amplest;

namespace {

std::vector<std::pair<std::int64_t, std::int64_t>> fraction_pairs(const Schedule& s) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (const auto& f : s.fractions()) out.emplace_back(f.num, f.den);
  return out;
}

Schedule custom_schedule(std::vector<int> depths,
                         const std::vector<std::pair<std::int64_t, std::int64_t>>& fractions) {
  std::vector<ShotFraction> fr;
  for (const auto& [n, d] : fractions) fr.push_back({n, d});
  return Schedule::custom(std::move(depths), std::move(fr));
}

MeasurementRecord record_of(const std::vector<std::tuple<int, std::int64_t, std::int64_t>>& entries) {
  MeasurementRecord r;
  for (const auto& [d, n, h] : entries) r.entries.push_back({d, n, h});
  r.validate();
  return r;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Maximum-likelihood amplitude estimation core";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const nlohmann::json::exception& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  py::class_<Schedule>(m, "Schedule")
      .def_static("custom", &custom_schedule, py::arg("depths"),
                  py::arg("fractions") = std::vector<std::pair<std::int64_t, std::int64_t>>{})
      .def_property_readonly("kind", [](const Schedule& s) { return std::string(to_string(s.kind())); })
      .def_property_readonly("depths", [](const Schedule& s) { return std::vector<int>(s.depths().begin(), s.depths().end()); })
      .def_property_readonly("fractions", &fraction_pairs)
      .def_property_readonly("nu", &Schedule::nu)
      .def_property_readonly("spread_coeff", &Schedule::spread_coeff)
      .def_property_readonly("beta", &Schedule::beta)
      .def_property_readonly("max_depth", &Schedule::max_depth)
      .def("__len__", &Schedule::size)
      .def("__eq__", [](const Schedule& a, const Schedule& b) { return a == b; })
      .def("to_json", [](const Schedule& s) { return to_json(s).dump(); })
      .def_static("from_json", [](const std::string& text) { return schedule_from_json(json::parse(text)); })
      .def("__repr__", [](const Schedule& s) { return "Schedule(" + to_json(s).dump() + ")"; });

  m.def("build_exp", &build_exp, py::arg("q"));
  m.def("build_exp_nu", &build_exp_nu, py::arg("max_depth"));
  m.def("build_poly", &build_poly, py::arg("beta"), py::arg("epsilon"));
  m.def("jitter", &jitter, py::arg("schedule"), py::arg("spread_coeff") = 2.0);
  m.def("s1", &s1);
  m.def("s2", &s2);
  m.def("closed_form_s", [](int d) {
    const auto c = closed_form_s(d);
    return std::make_pair(c.s1, c.s2);
  }, py::arg("d"));
  m.def("nu_bounds", [](int q) {
    const auto b = nu_bounds(q);
    return std::make_pair(b.lower, b.upper);
  }, py::arg("q"));

  m.def("erfinv", &erfinv, py::arg("y"));
  m.def("required_fisher", &required_fisher, py::arg("epsilon"), py::arg("delta"));
  m.def("required_shots", &required_shots, py::arg("epsilon"), py::arg("delta"), py::arg("schedule"),
        py::arg("a") = std::optional<double>{});
  m.def("total_calls", &total_calls, py::arg("schedule"), py::arg("n_shot"));
  m.def("speedup_factor", &speedup_factor, py::arg("schedule"));
  m.def("fisher_info", &fisher_info, py::arg("a"), py::arg("schedule"), py::arg("n_shot"));
  m.def("expected_avg_error", &expected_avg_error, py::arg("a"), py::arg("schedule"), py::arg("n_shot"));
  m.def("exceptional_values", &exceptional_values, py::arg("depth"));
  m.def("single_shot_fisher", &single_shot_fisher, py::arg("a"), py::arg("depth"));
  m.def("grid_size_for", &grid_size_for, py::arg("epsilon"), py::arg("multiplier") = 3.0);

  py::class_<Plan>(m, "Plan")
      .def_readonly("epsilon", &Plan::epsilon)
      .def_readonly("delta", &Plan::delta)
      .def_readonly("max_depth", &Plan::max_depth)
      .def_readonly("schedule", &Plan::schedule)
      .def_readonly("n_shot", &Plan::n_shot)
      .def_readonly("n_calls", &Plan::n_calls)
      .def_readonly("grid_size", &Plan::grid_size)
      .def_readonly("grid_multiplier", &Plan::grid_multiplier)
      .def("to_json", [](const Plan& p) { return to_json(p).dump(); });
  m.def("make_plan", &make_plan, py::arg("epsilon"), py::arg("delta"), py::arg("max_depth"),
        py::arg("jittered") = false, py::arg("spread_coeff") = 2.0, py::arg("grid_multiplier") = 3.0);

  py::class_<Estimate>(m, "Estimate")
      .def_readonly("theta_hat", &Estimate::theta_hat)
      .def_readonly("a_hat", &Estimate::a_hat)
      .def_readonly("grid_index", &Estimate::grid_index)
      .def_readonly("log_likelihood", &Estimate::log_likelihood)
      .def_readonly("grid_size", &Estimate::grid_size)
      .def("to_json", [](const Estimate& e) { return to_json(e).dump(); });

  m.def("draw_record", [](double a, const Schedule& s, std::int64_t n_shot, std::uint64_t seed) {
    std::vector<std::tuple<int, std::int64_t, std::int64_t>> out;
    for (const auto& e : draw_record(a, s, n_shot, seed).entries) out.emplace_back(e.depth, e.shots, e.hits);
    return out;
  }, py::arg("a"), py::arg("schedule"), py::arg("n_shot"), py::arg("seed"),
        "Simulated record as a list of (depth, shots, hits).");
  m.def("log_lik", [](double theta, const std::vector<std::tuple<int, std::int64_t, std::int64_t>>& entries) {
    return log_lik(theta, record_of(entries));
  }, py::arg("theta"), py::arg("entries"));
  m.def("grid_maximize", [](const std::vector<std::tuple<int, std::int64_t, std::int64_t>>& entries, std::int64_t n) {
    return grid_maximize(record_of(entries), n);
  }, py::arg("entries"), py::arg("grid_size"));
  m.def("run_mlqae", &run_mlqae, py::arg("a_true"), py::arg("plan"), py::arg("seed"));

  m.def("grover_power_prob", [](int n_qubits, std::vector<std::size_t> good, double a, int power) {
    return grover_power_prob({n_qubits, std::move(good), a}, power);
  }, py::arg("n_qubits"), py::arg("good_set"), py::arg("amplitude"), py::arg("power"));
  m.def("validate_oracle", [](int q, int t, int p, std::uint64_t seed) {
    return to_json(validate_oracle(q, t, p, seed)).dump();
  }, py::arg("max_qubits"), py::arg("trials"), py::arg("max_power") = 8, py::arg("seed") = 2023,
        "Report as a JSON string.");

  m.def("achieved_precision", [](const std::vector<double>& e, double delta) { return achieved_precision(e, delta); },
        py::arg("errors"), py::arg("delta"));
  m.def("sweep", [](std::int64_t points, int max_depth, double epsilon, double delta, bool jittered,
                    std::uint64_t seed) {
    ExperimentConfig c;
    c.points = points;
    c.max_depth = max_depth;
    c.epsilon = epsilon;
    c.delta = delta;
    c.jittered = jittered;
    c.base_seed = seed;
    std::vector<std::tuple<double, double, double, std::uint64_t>> out;
    {
      py::gil_scoped_release release;
      for (const auto& r : sweep_amplitudes(c)) out.emplace_back(r.a_true, r.a_hat, r.abs_err, r.seed);
    }
    return out;
  }, py::arg("points"), py::arg("max_depth"), py::arg("epsilon"), py::arg("delta"), py::arg("jittered") = false,
        py::arg("seed") = 0, "Rows of (a_true, a_hat, abs_err, seed).");
  m.def("call_ratio_table", [](const std::vector<int>& depths, double epsilon, double delta, double c) {
    std::vector<std::tuple<int, std::int64_t, std::int64_t, double>> out;
    for (const auto& r : call_ratio_table(depths, epsilon, delta, c)) out.emplace_back(r.d, r.n_calls, r.n_calls_jittered, r.ratio);
    return out;
  }, py::arg("depths"), py::arg("epsilon"), py::arg("delta"), py::arg("spread_coeff") = 2.0,
        "Rows of (d, n_calls, n_calls_jittered, ratio).");
}
