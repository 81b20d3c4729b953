#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "specmil/config.hpp"
#include "specmil/problems.hpp"

namespace specmil {

/// One (scheme, N) point of a convergence study.
struct ConvergenceRow {
  SchemeKind scheme = SchemeKind::milstein;
  std::size_t modes = 0;
  std::size_t steps = 0;
  std::size_t noise_modes = 0;
  std::uint64_t random_variables = 0;
  double rms_error = 0.0;
  double stderr_rms = 0.0;
  std::size_t failed_paths = 0;
  double wall_seconds = 0.0;
  std::vector<double> path_errors;  ///< per path, NaN where the path failed
};

struct SlopeFit {
  double vs_modes = 0.0;
  double vs_random_variables = 0.0;
  std::size_t points = 0;
};

struct ConvergenceReport {
  std::string problem;
  std::string rng_algorithm;
  std::uint64_t seed = 0;
  std::size_t paths = 0;
  ErrorMetric metric = ErrorMetric::rms;
  std::size_t ref_n = 0;
  std::size_t ref_m = 0;
  std::size_t ref_k = 0;
  std::size_t master_steps = 0;
  /// Self-distance of the reference; points below 10x this are left out of fits.
  double floor = 0.0;
  std::vector<ConvergenceRow> rows;  ///< scheme-major, ladder order
  std::map<SchemeKind, SlopeFit> slopes;

  std::vector<const ConvergenceRow*> rows_for(SchemeKind scheme) const;
};

/// Fine resolution of the shared master path: lcm of ref_m and every ladder M.
std::size_t master_steps(const ExperimentConfig& config, const ProblemSpec& problem);

/**
 * Monte Carlo strong error of every (scheme, N) against the Milstein
 * reference on coupled master paths. The coarse solution is zero-padded into
 * the reference basis. Paths are spread over `config.threads` workers and
 * reduced in path order, so results do not depend on the thread count.
 */
ConvergenceReport estimate_rms_error(const ExperimentConfig& config);
ConvergenceReport estimate_rms_error(const ExperimentConfig& config, const ProblemSpec& problem);

/// OLS slope of log(err) against log(x) over points with err >= 10 * floor.
/// Throws std::invalid_argument when fewer than two points remain.
double fit_loglog_slope(std::span<const double> xs, std::span<const double> errors,
                        double floor = 0.0);

/// Slopes of one scheme's rows against N and against the random-variable count.
SlopeFit fit_slopes(const ConvergenceReport& report, SchemeKind scheme);

void write_csv(const ConvergenceReport& report, std::ostream& out);
/// Writes the CSV to `path` and run metadata (RNG, seed, slopes) to `path`.meta.
void emit_csv(const ConvergenceReport& report, const std::filesystem::path& path);
std::string metadata_json(const ConvergenceReport& report);

}  // namespace specmil
