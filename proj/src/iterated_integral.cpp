#include "specmil/iterated_integral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "specmil/rng.hpp"

namespace specmil {

IdentityReport iterated_integral_oracle(const GridField& v, const NemytskiiPair& pair,
                                        const QWienerSpec& spec, const BasisPtr& basis, double h,
                                        std::size_t substeps, std::size_t samples,
                                        std::uint64_t seed) {
  if (substeps < 2) throw std::invalid_argument("iterated_integral_oracle: substeps must be >= 2");
  if (samples < 2) throw std::invalid_argument("iterated_integral_oracle: samples must be >= 2");
  if (!(h > 0.0)) throw std::invalid_argument("iterated_integral_oracle: h must be positive");
  if (v.size() != basis->size()) {
    throw std::invalid_argument("iterated_integral_oracle: state does not match the basis");
  }

  const std::size_t nodes = basis->size();
  const auto& modes = spec.active_modes();
  const std::size_t count = modes.size();

  // g_j(x_k) sqrt(mu_j), laid out [k * count + a]
  std::vector<double> weighted(nodes * count);
  for (std::size_t k = 0; k < nodes; ++k) {
    const Point x = basis->grid_point(k);
    for (std::size_t a = 0; a < count; ++a) {
      weighted[k * count + a] = std::sqrt(modes[a].mu) * spec.eigenfunction(modes[a].index, x);
    }
  }
  const GridField quad = quadrature_field(spec, basis, h);
  const GridField b = eval_diffusion_factor(pair, v);
  std::vector<double> byb(nodes);
  for (std::size_t k = 0; k < nodes; ++k) {
    byb[k] = pair.diffusion_dy(basis->grid_point(k), v[k]) * b[k];
  }

  NormalGenerator rng(seed);
  const double sub_scale = std::sqrt(h / static_cast<double>(substeps));

  std::vector<double> sum_d(nodes, 0.0), sum_d2(nodes, 0.0);
  std::vector<double> sum_sim2(nodes, 0.0), sum_closed2(nodes, 0.0);
  std::vector<double> total(count), running(count), delta(count);
  std::vector<double> cross(count * count);  // [k * count + j] = int beta_k d beta_j
  double max_abs = 0.0;

  for (std::size_t s = 0; s < samples; ++s) {
    std::fill(running.begin(), running.end(), 0.0);
    std::fill(cross.begin(), cross.end(), 0.0);
    for (std::size_t r = 0; r < substeps; ++r) {
      for (std::size_t a = 0; a < count; ++a) delta[a] = sub_scale * rng();
      for (std::size_t a = 0; a < count; ++a) {
        for (std::size_t c = 0; c < count; ++c) {
          if (a != c) cross[a * count + c] += running[a] * delta[c];
        }
      }
      for (std::size_t a = 0; a < count; ++a) running[a] += delta[a];
    }
    total = running;
    for (std::size_t a = 0; a < count; ++a) {
      cross[a * count + a] = 0.5 * (total[a] * total[a] - h);
    }

    for (std::size_t k = 0; k < nodes; ++k) {
      const double* w = weighted.data() + k * count;
      double simulated = 0.0;
      double dW = 0.0;
      for (std::size_t a = 0; a < count; ++a) {
        dW += w[a] * total[a];
        for (std::size_t c = 0; c < count; ++c) simulated += w[a] * w[c] * cross[c * count + a];
      }
      simulated *= byb[k];
      const double closed = 0.5 * byb[k] * (dW * dW - quad[k]);
      const double d = simulated - closed;
      sum_d[k] += d;
      sum_d2[k] += d * d;
      sum_sim2[k] += simulated * simulated;
      sum_closed2[k] += closed * closed;
      max_abs = std::max(max_abs, std::abs(d));
    }
  }

  IdentityReport report;
  report.samples = samples;
  report.substeps = substeps;
  report.draws = rng.draws();
  report.max_abs_difference = max_abs;
  const double n = static_cast<double>(samples);
  for (std::size_t k = 0; k < nodes; ++k) {
    const double mean = sum_d[k] / n;
    const double var = std::max(0.0, (sum_d2[k] - n * mean * mean) / (n - 1.0));
    const double se = std::sqrt(var / n);
    report.mean_difference.push_back(mean);
    report.stderr_difference.push_back(se);
    report.simulated_second_moment.push_back(sum_sim2[k] / n);
    report.closed_second_moment.push_back(sum_closed2[k] / n);

    if (se > 0.0) {
      report.max_mean_over_stderr = std::max(report.max_mean_over_stderr, std::abs(mean) / se);
    }
    const double closed2 = sum_closed2[k] / n;
    if (closed2 > 0.0) {
      report.max_relative_second_moment_error =
          std::max(report.max_relative_second_moment_error,
                   std::abs(sum_sim2[k] / n - closed2) / closed2);
    }
  }
  return report;
}

}  // namespace specmil
