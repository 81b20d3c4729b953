#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "specmil/coefficients.hpp"
#include "specmil/noise.hpp"
#include "specmil/spectral.hpp"

namespace specmil {

enum class SchemeKind { milstein, implicit_euler, exponential_euler, splitting };

std::string_view to_string(SchemeKind kind);
SchemeKind parse_scheme(std::string_view name);

/// How the advection drift -y y_x is put on the grid.
enum class AdvectionForm {
  conservative,  ///< -d/dx(y^2 / 2) via the interpolant of y^2 / 2; stable under aliasing
  product,       ///< -(grid y) * (spectral derivative of y); aliasing-unstable at small N
};

std::string_view to_string(AdvectionForm form);
AdvectionForm parse_advection_form(std::string_view name);

/// One term c * e_i of a finite sine-series initial value.
struct SineTerm {
  ModeIndex mode{};
  double coefficient = 0.0;
};

/**
 * A complete problem binding: domain, coefficients, noise, initial value,
 * horizon and the recommended resolution coupling M = N^e per scheme, K = N.
 */
struct ProblemSpec {
  std::string name;
  int dimension = 1;
  double kappa = 1.0;
  double horizon = 1.0;
  NemytskiiPair pair;
  /// Adds the advection term -y * dy/dx to the drift (one-dimensional only).
  bool burgers_advection = false;
  AdvectionForm advection_form = AdvectionForm::conservative;
  /// f == 0 and b(x, y) == y: the splitting-up scheme is applicable.
  bool linear_multiplicative = false;
  NoiseFamily noise_family = NoiseFamily::sine;
  EigenvalueRule noise_rule;
  std::vector<SineTerm> initial_value;
  std::map<SchemeKind, int> step_exponent;

  BasisPtr make_basis(std::size_t modes) const;
  QWienerSpec noise(std::size_t truncation) const;

  /// P_N(xi), exact since xi is a finite sine series.
  SpectralField initial_coefficients(const BasisPtr& basis) const;
  /// xi sampled at the collocation nodes.
  GridField initial_grid(const BasisPtr& basis) const;

  bool supports(SchemeKind kind) const { return step_exponent.count(kind) != 0; }
  /// Recommended M for a scheme at resolution N. Throws for unsupported schemes.
  std::size_t time_steps(SchemeKind kind, std::size_t modes) const;
  std::size_t noise_modes(std::size_t modes) const { return modes; }
};

/// Presets: "reacdiff1d", "reacdiff_cos", "heat2d", "burgers".
ProblemSpec preset(std::string_view name);
std::vector<std::string> preset_names();

}  // namespace specmil
