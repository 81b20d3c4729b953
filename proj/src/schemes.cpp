#include "specmil/schemes.hpp"

#include <cmath>
#include <string>

#include "specmil/coefficients.hpp"

namespace specmil {

namespace {

void require_matching(const StepContext& ctx, const SpectralField& y, const GridField& dW) {
  if (y.size() != ctx.basis()->size() || dW.size() != ctx.basis()->size()) {
    throw std::invalid_argument("scheme step: field does not match the context basis");
  }
}

// Drift integrand values at the nodes, including Burgers advection.
GridField drift_values(const StepContext& ctx, const SpectralField& y, const GridField& grid) {
  const ProblemSpec& problem = ctx.problem();
  GridField f = eval_drift(problem.pair, grid);
  if (!problem.burgers_advection) return f;
  std::vector<double> out(f.values().begin(), f.values().end());
  if (problem.advection_form == AdvectionForm::product) {
    const GridField dydx = spectral_derivative_1d(y);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] -= grid[k] * dydx[k];
  } else {
    std::vector<double> half_square(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) half_square[k] = 0.5 * grid[k] * grid[k];
    const GridField flux =
        spectral_derivative_1d(to_spectral(GridField(grid.basis_ptr(), std::move(half_square))));
    for (std::size_t k = 0; k < out.size(); ++k) out[k] -= flux[k];
  }
  return GridField(grid.basis_ptr(), std::move(out));
}

// Y + hF(Y) + b(Y) dW at the nodes; shared prefix of every explicit update.
std::vector<double> euler_update(const StepContext& ctx, const SpectralField& y,
                                 const GridField& grid, const GridField& dW) {
  const GridField f = drift_values(ctx, y, grid);
  const GridField b = eval_diffusion_factor(ctx.problem().pair, grid);
  const double h = ctx.step_size();
  std::vector<double> z(grid.size());
  for (std::size_t k = 0; k < z.size(); ++k) z[k] = grid[k] + h * f[k] + b[k] * dW[k];
  return z;
}

SpectralField finish(const StepContext& ctx, std::vector<double> grid_values,
                     std::span<const double> factors, std::size_t m) {
  SpectralField c = to_spectral(GridField(ctx.basis(), std::move(grid_values)));
  std::vector<double> out(c.coefficients().begin(), c.coefficients().end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] *= factors[i];
    if (!std::isfinite(out[i])) throw NonFiniteState(m);
  }
  return SpectralField(ctx.basis(), std::move(out));
}

std::vector<double> diagonal(const SpectralBasis& basis, double h, bool resolvent) {
  const auto lambda = basis.eigenvalues();
  std::vector<double> out(lambda.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = resolvent ? 1.0 / (1.0 + lambda[i] * h) : std::exp(-lambda[i] * h);
  }
  return out;
}

}  // namespace

NonFiniteState::NonFiniteState(std::size_t step)
    : std::runtime_error("non-finite state produced at step " + std::to_string(step)),
      step_(step) {}

SchemeConfig SchemeConfig::recommended(const ProblemSpec& problem, SchemeKind kind,
                                       std::size_t modes) {
  return {kind, modes, problem.time_steps(kind, modes), problem.noise_modes(modes)};
}

StepContext::StepContext(const ProblemSpec& problem, SchemeKind kind, BasisPtr basis,
                         const QWienerSpec& noise, double h)
    : StepContext(problem, kind, basis, quadrature_field(noise, basis, h), h) {}

StepContext::StepContext(const ProblemSpec& problem, SchemeKind kind, BasisPtr basis,
                         GridField quadrature, double h)
    : problem_(problem),
      kind_(kind),
      basis_(std::move(basis)),
      h_(h),
      quad_(std::move(quadrature)),
      semigroup_(diagonal(*basis_, h, false)),
      resolvent_(diagonal(*basis_, h, true)) {
  if (!(h > 0.0)) throw std::invalid_argument("StepContext: step size must be positive");
  if (basis_->dimension() != problem_.dimension) {
    throw std::invalid_argument("StepContext: basis dimension differs from the problem");
  }
  if (quad_.size() != basis_->size()) {
    throw std::invalid_argument("StepContext: quadrature field does not match the basis");
  }
  if (problem_.burgers_advection && problem_.dimension != 1) {
    throw std::invalid_argument("StepContext: advection drift requires d = 1");
  }
  if (kind_ == SchemeKind::splitting && !problem_.linear_multiplicative) {
    throw std::invalid_argument(
        "splitting-up requires a linear multiplicative problem (f = 0, b = y); '" +
        problem_.name + "' is nonlinear");
  }
}

SpectralField milstein_step(const StepContext& ctx, const SpectralField& y, const GridField& dW,
                            std::size_t m) {
  require_matching(ctx, y, dW);
  const GridField grid = to_grid(y);
  std::vector<double> z = euler_update(ctx, y, grid, dW);
  const GridField correction =
      eval_milstein_correction(ctx.problem().pair, grid, dW, ctx.quadrature());
  for (std::size_t k = 0; k < z.size(); ++k) z[k] += correction[k];
  return finish(ctx, std::move(z), ctx.semigroup_factors(), m);
}

SpectralField implicit_euler_step(const StepContext& ctx, const SpectralField& y,
                                  const GridField& dW, std::size_t m) {
  require_matching(ctx, y, dW);
  const GridField grid = to_grid(y);
  return finish(ctx, euler_update(ctx, y, grid, dW), ctx.resolvent_factors(), m);
}

SpectralField exponential_euler_step(const StepContext& ctx, const SpectralField& y,
                                     const GridField& dW, std::size_t m) {
  require_matching(ctx, y, dW);
  const GridField grid = to_grid(y);
  return finish(ctx, euler_update(ctx, y, grid, dW), ctx.semigroup_factors(), m);
}

SpectralField splitting_step(const StepContext& ctx, const SpectralField& y, const GridField& dW,
                             std::size_t m) {
  require_matching(ctx, y, dW);
  if (!ctx.problem().linear_multiplicative) {
    throw std::invalid_argument("splitting_step: problem is not linear multiplicative");
  }
  const GridField grid = to_grid(y);
  const GridField& quad = ctx.quadrature();
  std::vector<double> z(grid.size());
  for (std::size_t k = 0; k < z.size(); ++k) z[k] = std::exp(dW[k] - 0.5 * quad[k]) * grid[k];
  return finish(ctx, std::move(z), ctx.semigroup_factors(), m);
}

SpectralField scheme_step(const StepContext& ctx, const SpectralField& y, const GridField& dW,
                          std::size_t m) {
  switch (ctx.kind()) {
    case SchemeKind::milstein: return milstein_step(ctx, y, dW, m);
    case SchemeKind::implicit_euler: return implicit_euler_step(ctx, y, dW, m);
    case SchemeKind::exponential_euler: return exponential_euler_step(ctx, y, dW, m);
    case SchemeKind::splitting: return splitting_step(ctx, y, dW, m);
  }
  throw std::logic_error("scheme_step: unknown scheme");
}

SchemeRunner::SchemeRunner(const ProblemSpec& problem, const SchemeConfig& config)
    : config_(config),
      noise_(problem.noise(config.noise_modes)),
      ctx_(problem, config.kind, problem.make_basis(config.modes), noise_,
           problem.horizon / static_cast<double>(config.steps == 0 ? 1 : config.steps)) {
  if (config.modes == 0) throw std::invalid_argument("SchemeConfig: N must be positive");
}

RunResult SchemeRunner::run(const MasterPath& path, std::size_t snapshot_every) const {
  if (path.horizon() != ctx_.problem().horizon) {
    throw std::invalid_argument("SchemeRunner: master path horizon differs from the problem");
  }
  SpectralField y = ctx_.problem().initial_coefficients(ctx_.basis());
  RunResult result{y, {}, 0};
  if (snapshot_every > 0) result.snapshots.push_back(y);
  if (config_.steps == 0) return result;

  IncrementSampler sampler(path, noise_, ctx_.basis(), config_.steps);
  for (std::size_t m = 0; m < config_.steps; ++m) {
    const GridField dW = sampler.increment(m);
    y = scheme_step(ctx_, y, dW, m);
    if (snapshot_every > 0 && (m + 1) % snapshot_every == 0) result.snapshots.push_back(y);
  }
  result.final_state = std::move(y);
  result.random_variables = sampler.delivered();
  return result;
}

RunResult run_scheme(const ProblemSpec& problem, const SchemeConfig& config, const MasterPath& path,
                     std::size_t snapshot_every) {
  return SchemeRunner(problem, config).run(path, snapshot_every);
}

RunResult run_scheme(const ProblemSpec& problem, const SchemeConfig& config, std::uint64_t seed,
                     std::size_t snapshot_every) {
  const SchemeRunner runner(problem, config);
  if (config.steps == 0) {
    const MasterPath path(seed, 1, runner.noise(), problem.horizon);
    return runner.run(path, snapshot_every);
  }
  const MasterPath path(seed, config.steps, runner.noise(), problem.horizon);
  return runner.run(path, snapshot_every);
}

}  // namespace specmil
