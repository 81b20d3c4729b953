#include "specmil/problems.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace specmil {

std::string_view to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::milstein: return "milstein";
    case SchemeKind::implicit_euler: return "implicit_euler";
    case SchemeKind::exponential_euler: return "exponential_euler";
    case SchemeKind::splitting: return "splitting";
  }
  return "unknown";
}

SchemeKind parse_scheme(std::string_view name) {
  if (name == "milstein") return SchemeKind::milstein;
  if (name == "implicit_euler") return SchemeKind::implicit_euler;
  if (name == "exponential_euler") return SchemeKind::exponential_euler;
  if (name == "splitting") return SchemeKind::splitting;
  throw std::invalid_argument("unknown scheme '" + std::string(name) +
                              "' (expected milstein, implicit_euler, exponential_euler or splitting)");
}

BasisPtr ProblemSpec::make_basis(std::size_t modes) const {
  return SpectralBasis::create(dimension, modes, kappa);
}

QWienerSpec ProblemSpec::noise(std::size_t truncation) const {
  return QWienerSpec(noise_family, noise_rule, truncation);
}

SpectralField ProblemSpec::initial_coefficients(const BasisPtr& basis) const {
  std::vector<double> c(basis->size(), 0.0);
  const std::size_t n = basis->modes_per_axis();
  for (const SineTerm& term : initial_value) {
    const bool inside = term.mode[0] >= 1 && term.mode[0] <= n &&
                        (dimension == 1 || (term.mode[1] >= 1 && term.mode[1] <= n));
    if (inside) c[basis->flat_index(term.mode)] += term.coefficient;
  }
  return SpectralField(basis, std::move(c));
}

GridField ProblemSpec::initial_grid(const BasisPtr& basis) const {
  std::vector<double> v(basis->size(), 0.0);
  for (std::size_t k = 0; k < v.size(); ++k) {
    const Point x = basis->grid_point(k);
    double acc = 0.0;
    for (const SineTerm& term : initial_value) {
      constexpr double pi = std::numbers::pi;
      double e = std::numbers::sqrt2 * std::sin(static_cast<double>(term.mode[0]) * pi * x[0]);
      if (dimension == 2) {
        e *= std::numbers::sqrt2 * std::sin(static_cast<double>(term.mode[1]) * pi * x[1]);
      }
      acc += term.coefficient * e;
    }
    v[k] = acc;
  }
  return GridField(basis, std::move(v));
}

std::size_t ProblemSpec::time_steps(SchemeKind kind, std::size_t modes) const {
  const auto it = step_exponent.find(kind);
  if (it == step_exponent.end()) {
    throw std::invalid_argument("problem '" + name + "' has no coupling for scheme " +
                                std::string(to_string(kind)));
  }
  std::size_t steps = 1;
  for (int e = 0; e < it->second; ++e) steps *= modes;
  return steps;
}

std::string_view to_string(AdvectionForm form) {
  return form == AdvectionForm::conservative ? "conservative" : "product";
}

AdvectionForm parse_advection_form(std::string_view name) {
  if (name == "conservative") return AdvectionForm::conservative;
  if (name == "product") return AdvectionForm::product;
  throw std::invalid_argument("unknown advection form '" + std::string(name) +
                              "' (expected conservative or product)");
}

ProblemSpec preset(std::string_view name) {
  ProblemSpec p;
  p.name = std::string(name);
  if (name == "reacdiff1d") {
    p.dimension = 1;
    p.kappa = 1.0 / 100.0;
    p.pair = pairs::reaction_diffusion();
    p.noise_family = NoiseFamily::sine;
    p.noise_rule = {2.0, 1.0};
    p.step_exponent = {{SchemeKind::milstein, 2},
                       {SchemeKind::implicit_euler, 3},
                       {SchemeKind::exponential_euler, 3}};
  } else if (name == "reacdiff_cos") {
    p.dimension = 1;
    p.kappa = 1.0 / 20.0;
    p.pair = pairs::reaction_diffusion_bounded();
    p.noise_family = NoiseFamily::cosine;
    p.noise_rule = {3.0, 1.0};
    p.step_exponent = {{SchemeKind::milstein, 2},
                       {SchemeKind::implicit_euler, 4},
                       {SchemeKind::exponential_euler, 4}};
  } else if (name == "heat2d") {
    p.dimension = 2;
    p.kappa = 1.0 / 50.0;
    p.pair = pairs::linear_multiplicative();
    p.linear_multiplicative = true;
    p.noise_family = NoiseFamily::tensor_sine;
    p.noise_rule = {4.0, 1.0};
    p.initial_value = {{{1, 1}, 1.0}};
    p.step_exponent = {{SchemeKind::milstein, 2},
                       {SchemeKind::splitting, 2},
                       {SchemeKind::implicit_euler, 4},
                       {SchemeKind::exponential_euler, 4}};
  } else if (name == "burgers") {
    p.dimension = 1;
    p.kappa = 1.0 / 100.0;
    p.pair = pairs::linear_multiplicative();
    p.pair.name = "burgers";
    p.burgers_advection = true;
    p.noise_family = NoiseFamily::sine;
    p.noise_rule = {2.0, 1.0};
    // (3 sqrt(2) / 5)(sin(pi x) + sin(2 pi x)) in the sqrt(2) sin basis.
    p.initial_value = {{{1, 0}, 0.6}, {{2, 0}, 0.6}};
    p.step_exponent = {{SchemeKind::milstein, 2},
                       {SchemeKind::exponential_euler, 3},
                       {SchemeKind::implicit_euler, 3}};
  } else {
    std::string names;
    for (const std::string& n : preset_names()) names += (names.empty() ? "" : ", ") + n;
    throw std::invalid_argument("unknown problem '" + std::string(name) + "'; available: " + names);
  }
  return p;
}

std::vector<std::string> preset_names() {
  return {"reacdiff1d", "reacdiff_cos", "heat2d", "burgers"};
}

}  // namespace specmil
