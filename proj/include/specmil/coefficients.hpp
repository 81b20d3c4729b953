#pragma once

#include <functional>
#include <string>

#include "specmil/spectral.hpp"

namespace specmil {

/// Scalar integrand phi(x, y) evaluated at a node x with state value y.
using Integrand = std::function<double(const Point& x, double y)>;

/**
 * Nemytskii coefficients (F(v))(x) = f(x, v(x)), (B(v)u)(x) = b(x, v(x)) u(x),
 * with the y-derivative of b supplied in closed form.
 */
struct NemytskiiPair {
  std::string name;
  Integrand drift;           ///< f
  Integrand diffusion;       ///< b
  Integrand diffusion_dy;    ///< db/dy
  bool diffusion_constant_in_y = false;  ///< db/dy == 0 identically
};

/// Pointwise f(x_k, v_k).
GridField eval_drift(const NemytskiiPair& pair, const GridField& v);

/// Pointwise b(x_k, v_k); the caller multiplies by a noise increment.
GridField eval_diffusion_factor(const NemytskiiPair& pair, const GridField& v);

/// Pointwise 1/2 b_y(x_k, v_k) b(x_k, v_k) (dW_k^2 - quad_k).
GridField eval_milstein_correction(const NemytskiiPair& pair, const GridField& v,
                                   const GridField& dW, const GridField& quad);

/// Largest relative gap between b_y and a central difference of b in y over
/// the given sample points; used to catch transcription errors in b_y.
double derivative_consistency_error(const NemytskiiPair& pair, std::span<const Point> xs,
                                    std::span<const double> ys, double step = 1e-5);

namespace pairs {

/// f = 1 - y, b = (1 - y) / (1 + y^2).
NemytskiiPair reaction_diffusion();
/// f = 1 - y, b = y / (1 + y^2).
NemytskiiPair reaction_diffusion_bounded();
/// f = 0, b = y.
NemytskiiPair linear_multiplicative();
/// f = 0, b = 0.
NemytskiiPair deterministic();

}  // namespace pairs

}  // namespace specmil
