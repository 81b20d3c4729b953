#include <cmath>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "specmil/config.hpp"
#include "specmil/field_io.hpp"
#include "specmil/harness.hpp"
#include "specmil/iterated_integral.hpp"
#include "specmil/noise.hpp"
#include "specmil/problems.hpp"
#include "specmil/rng.hpp"
#include "specmil/schemes.hpp"

using namespace specmil;

namespace {

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<std::size_t> threads;
};

ExperimentConfig load_with_overrides(const CommonOptions& common) {
  ExperimentConfig config;
  if (!common.config_path.empty()) config = load_config(common.config_path);
  if (common.seed) config.seed = *common.seed;
  if (!common.out.empty()) config.out = common.out;
  if (common.threads) config.threads = *common.threads;
  return config;
}

void add_common(CLI::App* cmd, CommonOptions& common) {
  cmd->add_option("--config", common.config_path, "Experiment config file (key = value)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", common.seed, "Base seed");
  cmd->add_option("--out", common.out, "Output path");
  cmd->add_option("--threads", common.threads, "Worker threads")->check(CLI::PositiveNumber);
}

int run_single(const CommonOptions& common, const std::string& problem_name,
               const std::string& scheme_name, std::size_t modes, std::optional<std::size_t> steps,
               std::optional<std::size_t> noise_modes, std::size_t snapshot_every) {
  ExperimentConfig config = load_with_overrides(common);
  if (!problem_name.empty()) config.problem = problem_name;
  const ProblemSpec problem = config.resolve_problem();
  const SchemeKind kind = scheme_name.empty() ? config.schemes.front() : parse_scheme(scheme_name);

  SchemeConfig sc = SchemeConfig::recommended(problem, kind, modes);
  if (steps) sc.steps = *steps;
  if (noise_modes) sc.noise_modes = *noise_modes;

  const RunResult result = run_scheme(problem, sc, config.seed, snapshot_every);
  std::cout << "problem " << problem.name << " scheme " << to_string(kind) << " N=" << sc.modes
            << " M=" << sc.steps << " K=" << sc.noise_modes << " seed=" << config.seed << '\n';
  std::cout << "random_variables " << result.random_variables << '\n';
  std::cout << std::setprecision(17) << "h_norm " << h_norm(result.final_state) << '\n';

  if (!config.out.empty()) {
    write_field(std::filesystem::path(config.out), result.final_state);
    for (std::size_t i = 0; i < result.snapshots.size(); ++i) {
      write_field(std::filesystem::path(config.out + ".snap" + std::to_string(i)), result.snapshots[i]);
    }
    std::cout << "wrote " << config.out;
    if (!result.snapshots.empty()) std::cout << " and " << result.snapshots.size() << " snapshots";
    std::cout << '\n';
  }
  return 0;
}

int converge(const CommonOptions& common) {
  const ExperimentConfig config = load_with_overrides(common);
  const ConvergenceReport report = estimate_rms_error(config);
  if (config.out.empty()) {
    write_csv(report, std::cout);
  } else {
    emit_csv(report, config.out);
    std::cout << "wrote " << config.out << " and " << config.out << ".meta\n";
  }
  for (const auto& [kind, fit] : report.slopes) {
    std::cerr << std::setprecision(4) << to_string(kind) << ": slope vs N " << fit.vs_modes
              << ", slope vs random variables " << fit.vs_random_variables << " (" << fit.points
              << " points)\n";
  }
  return 0;
}

int identity_test(const CommonOptions& common, const std::string& problem_name, std::size_t modes,
                  std::size_t noise_modes, std::size_t substeps, std::size_t samples,
                  double step, std::optional<double> state) {
  ExperimentConfig config = load_with_overrides(common);
  if (!problem_name.empty()) config.problem = problem_name;
  const ProblemSpec problem = config.resolve_problem();
  const BasisPtr basis = problem.make_basis(modes);
  const QWienerSpec spec = problem.noise(noise_modes);
  const GridField v = state ? GridField(basis, std::vector<double>(basis->size(), *state))
                            : problem.initial_grid(basis);

  const IdentityReport report =
      iterated_integral_oracle(v, problem.pair, spec, basis, step, substeps, samples, config.seed);
  std::cout << std::setprecision(6);
  std::cout << "node,mean_difference,stderr,simulated_second_moment,closed_second_moment\n";
  for (std::size_t k = 0; k < report.mean_difference.size(); ++k) {
    std::cout << k << ',' << report.mean_difference[k] << ',' << report.stderr_difference[k] << ','
              << report.simulated_second_moment[k] << ',' << report.closed_second_moment[k] << '\n';
  }
  std::cout << "max_abs_difference " << report.max_abs_difference << '\n';
  std::cout << "max_mean_over_stderr " << report.max_mean_over_stderr << '\n';
  std::cout << "max_relative_second_moment_error " << report.max_relative_second_moment_error
            << '\n';
  std::cout << "draws " << report.draws << '\n';
  return 0;
}

int count_table(const CommonOptions& common, const std::string& problem_name) {
  ExperimentConfig config = load_with_overrides(common);
  if (!problem_name.empty()) config.problem = problem_name;
  const ProblemSpec problem = config.resolve_problem();

  std::ostringstream table;
  table << "scheme,N,M,K,random_variables\n";
  for (SchemeKind kind : config.schemes) {
    for (std::size_t n : config.ladder) {
      const SchemeConfig sc = SchemeConfig::recommended(problem, kind, n);
      table << to_string(kind) << ',' << n << ',' << sc.steps << ',' << sc.noise_modes << ','
            << count_random_variables(sc.steps, problem.noise(sc.noise_modes)) << '\n';
    }
  }
  // The config's `out` names the study CSV; only an explicit --out redirects the table.
  if (common.out.empty()) {
    std::cout << table.str();
  } else {
    std::ofstream out(common.out);
    if (!out) throw std::runtime_error("cannot write " + common.out);
    out << table.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral Galerkin Milstein integrator for parabolic SPDEs"};
  app.require_subcommand(1);

  CommonOptions common;

  auto* run = app.add_subcommand("run", "Integrate one trajectory and dump the final field");
  add_common(run, common);
  std::string run_problem, run_scheme_name;
  std::size_t run_modes = 16;
  std::optional<std::size_t> run_steps, run_noise;
  std::size_t snapshot_every = 0;
  run->add_option("--problem", run_problem, "Problem preset")
      ->check(CLI::IsMember(preset_names()));
  run->add_option("--scheme", run_scheme_name,
                  "milstein | implicit_euler | exponential_euler | splitting");
  run->add_option("-N,--modes", run_modes, "Spectral modes per axis")->check(CLI::PositiveNumber);
  run->add_option("-M,--steps", run_steps, "Time steps (default: problem coupling)");
  run->add_option("-K,--noise-modes", run_noise, "Noise modes per axis (default: N)");
  run->add_option("--snapshot-every", snapshot_every, "Also dump every n-th iterate");

  auto* conv = app.add_subcommand("converge", "Monte Carlo convergence study over a ladder");
  add_common(conv, common);
  conv->get_option("--config")->required();

  auto* ident = app.add_subcommand("identity-test", "Sub-stepped check of the iterated integral");
  add_common(ident, common);
  std::string id_problem;
  std::size_t id_modes = 8, id_noise = 3, id_substeps = 1000, id_samples = 10000;
  double id_step = 0.01;
  std::optional<double> id_state;
  ident->add_option("--problem", id_problem, "Problem preset supplying b and Q")
      ->check(CLI::IsMember(preset_names()));
  ident->add_option("-N,--modes", id_modes, "Grid nodes per axis")->check(CLI::PositiveNumber);
  ident->add_option("-K,--noise-modes", id_noise, "Noise modes")->check(CLI::PositiveNumber);
  ident->add_option("--substeps", id_substeps, "Sub-intervals per step");
  ident->add_option("--samples", id_samples, "Monte Carlo samples");
  ident->add_option("--step", id_step, "Step size h")->check(CLI::PositiveNumber);
  ident->add_option("--state", id_state, "Constant state value (default: initial value)");

  auto* count = app.add_subcommand("count", "Random-variable accounting table");
  add_common(count, common);
  std::string count_problem;
  count->add_option("--problem", count_problem, "Problem preset")
      ->check(CLI::IsMember(preset_names()));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      return run_single(common, run_problem, run_scheme_name, run_modes, run_steps, run_noise,
                        snapshot_every);
    }
    if (*conv) return converge(common);
    if (*ident) {
      return identity_test(common, id_problem, id_modes, id_noise, id_substeps, id_samples, id_step,
                           id_state);
    }
    if (*count) return count_table(common, count_problem);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
