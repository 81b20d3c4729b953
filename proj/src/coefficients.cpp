#include "specmil/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace specmil {

namespace {

GridField pointwise(const Integrand& phi, const GridField& v) {
  const SpectralBasis& basis = v.basis();
  std::vector<double> out(v.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = phi(basis.grid_point(k), v[k]);
  return GridField(v.basis_ptr(), std::move(out));
}

}  // namespace

GridField eval_drift(const NemytskiiPair& pair, const GridField& v) {
  return pointwise(pair.drift, v);
}

GridField eval_diffusion_factor(const NemytskiiPair& pair, const GridField& v) {
  return pointwise(pair.diffusion, v);
}

GridField eval_milstein_correction(const NemytskiiPair& pair, const GridField& v,
                                   const GridField& dW, const GridField& quad) {
  if (dW.size() != v.size() || quad.size() != v.size()) {
    throw std::invalid_argument("eval_milstein_correction: field size mismatch");
  }
  const SpectralBasis& basis = v.basis();
  std::vector<double> out(v.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const Point x = basis.grid_point(k);
    const double y = v[k];
    out[k] = 0.5 * pair.diffusion_dy(x, y) * pair.diffusion(x, y) * (dW[k] * dW[k] - quad[k]);
  }
  return GridField(v.basis_ptr(), std::move(out));
}

double derivative_consistency_error(const NemytskiiPair& pair, std::span<const Point> xs,
                                    std::span<const double> ys, double step) {
  double worst = 0.0;
  for (const Point& x : xs) {
    for (double y : ys) {
      const double fd = (pair.diffusion(x, y + step) - pair.diffusion(x, y - step)) / (2.0 * step);
      const double exact = pair.diffusion_dy(x, y);
      const double scale = std::max({std::abs(exact), std::abs(fd), 1e-3});
      worst = std::max(worst, std::abs(fd - exact) / scale);
    }
  }
  return worst;
}

namespace pairs {

NemytskiiPair reaction_diffusion() {
  return {
      "reaction_diffusion",
      [](const Point&, double y) { return 1.0 - y; },
      [](const Point&, double y) { return (1.0 - y) / (1.0 + y * y); },
      // d/dy (1-y)/(1+y^2) = (y^2 - 2y - 1) / (1+y^2)^2
      [](const Point&, double y) {
        const double q = 1.0 + y * y;
        return (y * y - 2.0 * y - 1.0) / (q * q);
      },
      false,
  };
}

NemytskiiPair reaction_diffusion_bounded() {
  return {
      "reaction_diffusion_bounded",
      [](const Point&, double y) { return 1.0 - y; },
      [](const Point&, double y) { return y / (1.0 + y * y); },
      [](const Point&, double y) {
        const double q = 1.0 + y * y;
        return (1.0 - y * y) / (q * q);
      },
      false,
  };
}

NemytskiiPair linear_multiplicative() {
  return {
      "linear_multiplicative",
      [](const Point&, double) { return 0.0; },
      [](const Point&, double y) { return y; },
      [](const Point&, double) { return 1.0; },
      false,
  };
}

NemytskiiPair deterministic() {
  return {
      "deterministic",
      [](const Point&, double) { return 0.0; },
      [](const Point&, double) { return 0.0; },
      [](const Point&, double) { return 0.0; },
      true,
  };
}

}  // namespace pairs

}  // namespace specmil
