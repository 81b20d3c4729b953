#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "specmil/noise.hpp"
#include "specmil/problems.hpp"
#include "specmil/spectral.hpp"

namespace specmil {

/// Thrown when an iterate stops being finite; carries the failing step.
class NonFiniteState : public std::runtime_error {
 public:
  explicit NonFiniteState(std::size_t step);
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

/// Resolution of one scheme run: N modes per axis, M steps, K noise modes.
struct SchemeConfig {
  SchemeKind kind = SchemeKind::milstein;
  std::size_t modes = 8;
  std::size_t steps = 64;
  std::size_t noise_modes = 8;

  /// Coupling recommended by the problem: M = N^e, K = N.
  static SchemeConfig recommended(const ProblemSpec& problem, SchemeKind kind, std::size_t modes);
};

/**
 * Everything one step needs that does not change between steps: the basis,
 * h = T/M, the quadrature field h sum mu_j g_j^2 and the diagonal factors
 * exp(-lambda h) and 1/(1 + lambda h).
 */
class StepContext {
 public:
  StepContext(const ProblemSpec& problem, SchemeKind kind, BasisPtr basis,
              const QWienerSpec& noise, double h);

  /// Same as above with an explicitly supplied quadrature field.
  StepContext(const ProblemSpec& problem, SchemeKind kind, BasisPtr basis, GridField quadrature,
              double h);

  SchemeKind kind() const { return kind_; }
  const ProblemSpec& problem() const { return problem_; }
  const BasisPtr& basis() const { return basis_; }
  double step_size() const { return h_; }
  const GridField& quadrature() const { return quad_; }
  std::span<const double> semigroup_factors() const { return semigroup_; }
  std::span<const double> resolvent_factors() const { return resolvent_; }

 private:
  ProblemSpec problem_;
  SchemeKind kind_;
  BasisPtr basis_;
  double h_;
  GridField quad_;
  std::vector<double> semigroup_;
  std::vector<double> resolvent_;
};

/// Y_{m+1} = P_N e^{Ah}(Y + hF(Y) + b(Y) dW + 1/2 b_y(Y) b(Y) (dW^2 - quad)).
SpectralField milstein_step(const StepContext& ctx, const SpectralField& y, const GridField& dW,
                            std::size_t m);

/// Y_{m+1} = P_N (I - hA)^{-1}(Y + hF(Y) + b(Y) dW).
SpectralField implicit_euler_step(const StepContext& ctx, const SpectralField& y,
                                  const GridField& dW, std::size_t m);

/// Y_{m+1} = P_N e^{Ah}(Y + hF(Y) + b(Y) dW).
SpectralField exponential_euler_step(const StepContext& ctx, const SpectralField& y,
                                     const GridField& dW, std::size_t m);

/// Y_{m+1} = P_N e^{Ah}(exp(dW - quad/2) Y); linear multiplicative problems only.
SpectralField splitting_step(const StepContext& ctx, const SpectralField& y, const GridField& dW,
                             std::size_t m);

/// Dispatches on ctx.kind().
SpectralField scheme_step(const StepContext& ctx, const SpectralField& y, const GridField& dW,
                          std::size_t m);

struct RunResult {
  SpectralField final_state;
  std::vector<SpectralField> snapshots;  ///< every `snapshot_every` steps, including m = 0
  std::uint64_t random_variables = 0;    ///< Brownian increments consumed
};

/// Prepared run of one configuration; reusable across master paths and threads.
class SchemeRunner {
 public:
  SchemeRunner(const ProblemSpec& problem, const SchemeConfig& config);

  const SchemeConfig& config() const { return config_; }
  const StepContext& context() const { return ctx_; }
  const QWienerSpec& noise() const { return noise_; }

  /// Iterates M steps from P_N(xi) on the increments of `path`.
  RunResult run(const MasterPath& path, std::size_t snapshot_every = 0) const;

 private:
  SchemeConfig config_;
  QWienerSpec noise_;
  StepContext ctx_;
};

RunResult run_scheme(const ProblemSpec& problem, const SchemeConfig& config, const MasterPath& path,
                     std::size_t snapshot_every = 0);

/// Convenience: a private master path at exactly (M, K) built from `seed`.
RunResult run_scheme(const ProblemSpec& problem, const SchemeConfig& config, std::uint64_t seed,
                     std::size_t snapshot_every = 0);

}  // namespace specmil
