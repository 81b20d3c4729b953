#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "specmil/problems.hpp"

namespace specmil {

/// Error functional of a convergence study.
enum class ErrorMetric {
  rms,       ///< root mean square over paths of the H-norm at the horizon
  pathwise,  ///< H-norm on a single fixed path
};

std::string_view to_string(ErrorMetric metric);
ErrorMetric parse_metric(std::string_view name);

/**
 * A convergence study: problem preset, schemes, resolution ladder, reference
 * resolution, Monte Carlo sample count and base seed.
 *
 * File format is flat `key = value` text; `#` starts a comment. Keys:
 * problem, schemes, ladder, ref_n, ref_m, ref_k, paths, seed, out, and the
 * optional threads, metric, coupling (e.g. "milstein:2,implicit_euler:3"),
 * noise_family, noise_exponent, noise_scale, advection.
 */
struct ExperimentConfig {
  std::string problem = "reacdiff1d";
  std::vector<SchemeKind> schemes{SchemeKind::milstein};
  std::vector<std::size_t> ladder{2, 4, 8, 16};
  std::size_t ref_n = 32;
  std::size_t ref_m = 1024;
  std::size_t ref_k = 32;
  std::size_t paths = 100;
  std::uint64_t seed = 1;
  std::string out;
  std::size_t threads = 1;
  ErrorMetric metric = ErrorMetric::rms;
  std::map<SchemeKind, int> coupling;  ///< overrides of the preset's M = N^e
  std::optional<NoiseFamily> noise_family;
  std::optional<double> noise_exponent;
  std::optional<double> noise_scale;
  std::optional<AdvectionForm> advection;

  /// The preset named by `problem` with the overrides above applied.
  ProblemSpec resolve_problem() const;

  /// Throws std::invalid_argument when the ladder or reference is inconsistent.
  void validate() const;
  /// Same checks against an explicitly supplied problem.
  void validate(const ProblemSpec& problem) const;
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path);
void write_config(const ExperimentConfig& config, std::ostream& out);

}  // namespace specmil
