#pragma once

#include <cstdint>
#include <vector>

#include "specmil/coefficients.hpp"
#include "specmil/noise.hpp"
#include "specmil/spectral.hpp"

namespace specmil {

/**
 * Nodewise moments of the iterated stochastic integral
 * int int B'(v)(B(v) dW_u) dW_s over one step, simulated on a sub-stepped
 * path, against the closed form 1/2 b_y b (dW^2 - quad) built from the same
 * path's total increment.
 */
struct IdentityReport {
  std::size_t samples = 0;
  std::size_t substeps = 0;
  std::uint64_t draws = 0;

  std::vector<double> mean_difference;      ///< mean of simulated - closed
  std::vector<double> stderr_difference;    ///< its standard error
  std::vector<double> simulated_second_moment;
  std::vector<double> closed_second_moment;

  double max_abs_difference = 0.0;          ///< over all samples and nodes
  double max_mean_over_stderr = 0.0;        ///< max_k |mean_k| / stderr_k
  double max_relative_second_moment_error = 0.0;
};

/**
 * Monte Carlo check of the iterated-integral identity at state v (grid values).
 *
 * Each active mode gets `substeps` Brownian sub-increments of variance
 * h / substeps. Same-mode integrals use the exact 1/2 (d beta^2 - h); cross-mode
 * integrals are left-point sums. Throws std::invalid_argument for substeps < 2
 * or samples < 2.
 */
IdentityReport iterated_integral_oracle(const GridField& v, const NemytskiiPair& pair,
                                        const QWienerSpec& spec, const BasisPtr& basis, double h,
                                        std::size_t substeps, std::size_t samples,
                                        std::uint64_t seed);

}  // namespace specmil
