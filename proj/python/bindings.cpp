#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "specmil/config.hpp"
#include "specmil/harness.hpp"
#include "specmil/iterated_integral.hpp"
#include "specmil/noise.hpp"
#include "specmil/problems.hpp"
#include "specmil/schemes.hpp"
#include "specmil/spectral.hpp"

namespace py = pybind11;
using namespace specmil;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

// Lexicographic storage maps to (N,) in 1D and (N, N) in 2D.
Array to_array(const SpectralBasis& basis, std::span<const double> data) {
  std::vector<py::ssize_t> shape(basis.dimension(), static_cast<py::ssize_t>(basis.modes_per_axis()));
  Array out(shape);
  std::copy(data.begin(), data.end(), out.mutable_data());
  return out;
}

BasisPtr basis_for(const Array& a, double kappa) {
  if (a.ndim() == 1) return SpectralBasis::create(1, a.shape(0), kappa);
  if (a.ndim() == 2 && a.shape(0) == a.shape(1)) return SpectralBasis::create(2, a.shape(0), kappa);
  throw std::invalid_argument("expected an array of shape (N,) or (N, N)");
}

std::vector<double> flat(const Array& a) { return {a.data(), a.data() + a.size()}; }

ProblemSpec problem_named(const std::string& name, const std::optional<std::string>& advection) {
  ProblemSpec p = preset(name);
  if (advection) p.advection_form = parse_advection_form(*advection);
  return p;
}

py::dict run(const std::string& problem_name, const std::string& scheme, std::size_t modes,
             std::optional<std::size_t> steps, std::optional<std::size_t> noise_modes,
             std::uint64_t seed, std::optional<std::string> advection) {
  const ProblemSpec problem = problem_named(problem_name, advection);
  SchemeConfig sc = SchemeConfig::recommended(problem, parse_scheme(scheme), modes);
  if (steps) sc.steps = *steps;
  if (noise_modes) sc.noise_modes = *noise_modes;
  const RunResult r = [&] {
    py::gil_scoped_release release;
    return run_scheme(problem, sc, seed);
  }();
  const SpectralField& c = r.final_state;
  py::dict out;
  out["coefficients"] = to_array(c.basis(), c.coefficients());
  const GridField g = to_grid(c);
  out["grid"] = to_array(g.basis(), g.values());
  out["h_norm"] = h_norm(c);
  out["random_variables"] = r.random_variables;
  out["steps"] = sc.steps;
  out["noise_modes"] = sc.noise_modes;
  return out;
}

py::dict report_dict(const ConvergenceReport& report) {
  py::list rows;
  for (const ConvergenceRow& row : report.rows) {
    py::dict d;
    d["scheme"] = std::string(to_string(row.scheme));
    d["N"] = row.modes;
    d["M"] = row.steps;
    d["K"] = row.noise_modes;
    d["random_variables"] = row.random_variables;
    d["rms_error"] = row.rms_error;
    d["stderr"] = row.stderr_rms;
    d["failed_paths"] = row.failed_paths;
    d["wall_seconds"] = row.wall_seconds;
    d["path_errors"] = row.path_errors;
    rows.append(d);
  }
  py::dict slopes;
  for (const auto& [kind, fit] : report.slopes) {
    py::dict s;
    s["vs_N"] = fit.vs_modes;
    s["vs_random_variables"] = fit.vs_random_variables;
    s["points"] = fit.points;
    slopes[py::str(std::string(to_string(kind)))] = s;
  }
  std::ostringstream csv;
  write_csv(report, csv);
  py::dict out;
  out["problem"] = report.problem;
  out["seed"] = report.seed;
  out["paths"] = report.paths;
  out["master_steps"] = report.master_steps;
  out["rows"] = rows;
  out["slopes"] = slopes;
  out["csv"] = csv.str();
  return out;
}

py::dict converge(const std::string& config_text, std::optional<std::size_t> threads) {
  std::istringstream in(config_text);
  ExperimentConfig config = parse_config(in);
  if (threads) config.threads = *threads;
  const ConvergenceReport report = [&] {
    py::gil_scoped_release release;
    return estimate_rms_error(config);
  }();
  return report_dict(report);
}

py::dict identity_test(const std::string& problem_name, std::size_t modes, std::size_t noise_modes,
                       double step, std::size_t substeps, std::size_t samples, std::uint64_t seed,
                       std::optional<double> state) {
  const ProblemSpec problem = preset(problem_name);
  const BasisPtr basis = problem.make_basis(modes);
  const GridField v = state ? GridField(basis, std::vector<double>(basis->size(), *state))
                            : problem.initial_grid(basis);
  const IdentityReport r = [&] {
    py::gil_scoped_release release;
    return iterated_integral_oracle(v, problem.pair, problem.noise(noise_modes), basis, step,
                                    substeps, samples, seed);
  }();
  py::dict out;
  out["mean_difference"] = r.mean_difference;
  out["stderr_difference"] = r.stderr_difference;
  out["simulated_second_moment"] = r.simulated_second_moment;
  out["closed_second_moment"] = r.closed_second_moment;
  out["max_abs_difference"] = r.max_abs_difference;
  out["max_mean_over_stderr"] = r.max_mean_over_stderr;
  out["max_relative_second_moment_error"] = r.max_relative_second_moment_error;
  out["draws"] = r.draws;
  return out;
}

}  // namespace

PYBIND11_MODULE(_specmil, m) {
  m.doc() = "Spectral Galerkin Milstein integrator for parabolic SPDEs";

  py::register_exception<NonFiniteState>(m, "NonFiniteState", PyExc_ArithmeticError);

  m.def("presets", &preset_names, "Names of the built-in problems");

  m.def(
      "eigenvalues",
      [](int dimension, std::size_t modes, double kappa) {
        const auto b = SpectralBasis::create(dimension, modes, kappa);
        return to_array(*b, b->eigenvalues());
      },
      py::arg("dimension"), py::arg("modes"), py::arg("kappa") = 1.0,
      "Dirichlet Laplacian eigenvalues kappa * pi^2 |j|^2 in storage order");

  m.def(
      "to_spectral",
      [](const Array& values) {
        const SpectralField c = to_spectral(GridField(basis_for(values, 1.0), flat(values)));
        return to_array(c.basis(), c.coefficients());
      },
      py::arg("values"), "Sine coefficients of values at the interior nodes");

  m.def(
      "to_grid",
      [](const Array& coefficients) {
        const GridField g = to_grid(SpectralField(basis_for(coefficients, 1.0), flat(coefficients)));
        return to_array(g.basis(), g.values());
      },
      py::arg("coefficients"), "Values at the interior nodes of a sine series");

  m.def(
      "apply_semigroup",
      [](const Array& coefficients, double h, double kappa) {
        const SpectralField c =
            apply_semigroup(SpectralField(basis_for(coefficients, kappa), flat(coefficients)), h);
        return to_array(c.basis(), c.coefficients());
      },
      py::arg("coefficients"), py::arg("h"), py::arg("kappa") = 1.0);

  m.def(
      "count_random_variables",
      [](const std::string& problem, const std::string& scheme, std::size_t modes) {
        const ProblemSpec p = preset(problem);
        const SchemeConfig sc = SchemeConfig::recommended(p, parse_scheme(scheme), modes);
        return count_random_variables(sc.steps, p.noise(sc.noise_modes));
      },
      py::arg("problem"), py::arg("scheme"), py::arg("modes"),
      "Normal draws consumed at the recommended resolution coupling");

  m.def("run", &run, py::arg("problem"), py::arg("scheme") = "milstein", py::arg("modes") = 16,
        py::arg("steps") = py::none(), py::arg("noise_modes") = py::none(), py::arg("seed") = 1,
        py::arg("advection") = py::none(), "Integrate one trajectory to the horizon");

  m.def("converge", &converge, py::arg("config"), py::arg("threads") = py::none(),
        "Run a convergence study from key = value config text");

  m.def("identity_test", &identity_test, py::arg("problem"), py::arg("modes") = 8,
        py::arg("noise_modes") = 3, py::arg("step") = 0.01, py::arg("substeps") = 1000,
        py::arg("samples") = 10000, py::arg("seed") = 1, py::arg("state") = py::none(),
        "Sub-stepped check of the iterated-integral closed form");
}
