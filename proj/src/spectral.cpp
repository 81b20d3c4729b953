#include "specmil/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace specmil {

namespace {

void require_same_basis_size(const SpectralBasis& basis, std::size_t n, const char* what) {
  if (n != basis.size()) {
    throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(basis.size()) +
                                " values, got " + std::to_string(n));
  }
}

// out = T * in along one axis; T is N x N with T[k*N + n], `transpose` selects T^T.
// `stride` and `count` describe the other axis in a 2D layout.
void apply_axis(std::span<const double> table, std::size_t modes, bool transpose,
                std::span<const double> in, std::span<double> out, int axis, int dimension) {
  const std::size_t n = modes;
  if (dimension == 1) {
    for (std::size_t r = 0; r < n; ++r) {
      double acc = 0.0;
      for (std::size_t c = 0; c < n; ++c) {
        acc += (transpose ? table[c * n + r] : table[r * n + c]) * in[c];
      }
      out[r] = acc;
    }
    return;
  }
  if (axis == 0) {
    // out[r, j] = sum_c T(r, c) in[c, j]
    for (std::size_t r = 0; r < n; ++r) {
      double* orow = out.data() + r * n;
      for (std::size_t j = 0; j < n; ++j) orow[j] = 0.0;
      for (std::size_t c = 0; c < n; ++c) {
        const double t = transpose ? table[c * n + r] : table[r * n + c];
        const double* irow = in.data() + c * n;
        for (std::size_t j = 0; j < n; ++j) orow[j] += t * irow[j];
      }
    }
  } else {
    // out[i, r] = sum_c T(r, c) in[i, c]
    for (std::size_t i = 0; i < n; ++i) {
      const double* irow = in.data() + i * n;
      double* orow = out.data() + i * n;
      for (std::size_t r = 0; r < n; ++r) {
        double acc = 0.0;
        if (transpose) {
          for (std::size_t c = 0; c < n; ++c) acc += table[c * n + r] * irow[c];
        } else {
          const double* trow = table.data() + r * n;
          for (std::size_t c = 0; c < n; ++c) acc += trow[c] * irow[c];
        }
        orow[r] = acc;
      }
    }
  }
}

}  // namespace

SpectralBasis::SpectralBasis(int dimension, std::size_t modes_per_axis, double kappa)
    : dimension_(dimension), modes_(modes_per_axis), kappa_(kappa) {
  if (dimension != 1 && dimension != 2) {
    throw std::invalid_argument("SpectralBasis: dimension must be 1 or 2");
  }
  if (modes_per_axis == 0) {
    throw std::invalid_argument("SpectralBasis: modes_per_axis must be positive");
  }
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw std::invalid_argument("SpectralBasis: kappa must be positive and finite");
  }
  size_ = dimension == 1 ? modes_ : modes_ * modes_;

  constexpr double pi = std::numbers::pi;
  const double scale = kappa_ * pi * pi;
  eigenvalues_.resize(size_);
  for (std::size_t flat = 0; flat < size_; ++flat) {
    const ModeIndex i = mode_index(flat);
    eigenvalues_[flat] = scale * static_cast<double>(i[0] * i[0] + i[1] * i[1]);
  }

  sine_table_.resize(modes_ * modes_);
  derivative_table_.resize(modes_ * modes_);
  const double sqrt2 = std::numbers::sqrt2;
  for (std::size_t k = 0; k < modes_; ++k) {
    // Integer arithmetic in the argument keeps the table symmetric in (k, n).
    for (std::size_t n = 0; n < modes_; ++n) {
      const double arg =
          pi * static_cast<double>((n + 1) * (k + 1)) / static_cast<double>(modes_ + 1);
      sine_table_[k * modes_ + n] = sqrt2 * std::sin(arg);
      derivative_table_[k * modes_ + n] = sqrt2 * static_cast<double>(n + 1) * pi * std::cos(arg);
    }
  }
}

std::shared_ptr<const SpectralBasis> SpectralBasis::create(int dimension, std::size_t modes_per_axis,
                                                           double kappa) {
  return std::make_shared<const SpectralBasis>(dimension, modes_per_axis, kappa);
}

double SpectralBasis::node(std::size_t k) const {
  return static_cast<double>(k + 1) / static_cast<double>(modes_ + 1);
}

Point SpectralBasis::grid_point(std::size_t flat) const {
  if (dimension_ == 1) return {node(flat), 0.0};
  return {node(flat / modes_), node(flat % modes_)};
}

ModeIndex SpectralBasis::mode_index(std::size_t flat) const {
  if (dimension_ == 1) return {flat + 1, 0};
  return {flat / modes_ + 1, flat % modes_ + 1};
}

std::size_t SpectralBasis::flat_index(const ModeIndex& mode) const {
  if (dimension_ == 1) return mode[0] - 1;
  return (mode[0] - 1) * modes_ + (mode[1] - 1);
}

double SpectralBasis::eigenfunction(std::size_t flat, const Point& x) const {
  constexpr double pi = std::numbers::pi;
  const ModeIndex i = mode_index(flat);
  double value = std::numbers::sqrt2 * std::sin(static_cast<double>(i[0]) * pi * x[0]);
  if (dimension_ == 2) {
    value *= std::numbers::sqrt2 * std::sin(static_cast<double>(i[1]) * pi * x[1]);
  }
  return value;
}

SpectralField::SpectralField(BasisPtr basis, std::vector<double> coefficients)
    : basis_(std::move(basis)), coefficients_(std::move(coefficients)) {
  if (!basis_) throw std::invalid_argument("SpectralField: null basis");
  require_same_basis_size(*basis_, coefficients_.size(), "SpectralField");
}

SpectralField SpectralField::zeros(BasisPtr basis) {
  const std::size_t n = basis->size();
  return SpectralField(std::move(basis), std::vector<double>(n, 0.0));
}

GridField::GridField(BasisPtr basis, std::vector<double> values)
    : basis_(std::move(basis)), values_(std::move(values)) {
  if (!basis_) throw std::invalid_argument("GridField: null basis");
  require_same_basis_size(*basis_, values_.size(), "GridField");
}

GridField GridField::zeros(BasisPtr basis) {
  const std::size_t n = basis->size();
  return GridField(std::move(basis), std::vector<double>(n, 0.0));
}

SpectralField to_spectral(const GridField& v) {
  const SpectralBasis& basis = v.basis();
  const std::size_t n = basis.modes_per_axis();
  const double weight = 1.0 / static_cast<double>(n + 1);
  std::vector<double> out(basis.size());
  if (basis.dimension() == 1) {
    apply_axis(basis.sine_table(), n, true, v.values(), out, 0, 1);
    for (double& c : out) c *= weight;
  } else {
    std::vector<double> tmp(basis.size());
    apply_axis(basis.sine_table(), n, true, v.values(), tmp, 0, 2);
    apply_axis(basis.sine_table(), n, true, tmp, out, 1, 2);
    for (double& c : out) c *= weight * weight;
  }
  return SpectralField(v.basis_ptr(), std::move(out));
}

GridField to_grid(const SpectralField& c) {
  const SpectralBasis& basis = c.basis();
  const std::size_t n = basis.modes_per_axis();
  std::vector<double> out(basis.size());
  if (basis.dimension() == 1) {
    apply_axis(basis.sine_table(), n, false, c.coefficients(), out, 0, 1);
  } else {
    std::vector<double> tmp(basis.size());
    apply_axis(basis.sine_table(), n, false, c.coefficients(), tmp, 0, 2);
    apply_axis(basis.sine_table(), n, false, tmp, out, 1, 2);
  }
  return GridField(c.basis_ptr(), std::move(out));
}

SpectralField apply_semigroup(const SpectralField& c, double h) {
  if (!(h >= 0.0)) throw std::invalid_argument("apply_semigroup: negative time step");
  const auto lambda = c.basis().eigenvalues();
  std::vector<double> out(c.coefficients().begin(), c.coefficients().end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= std::exp(-lambda[i] * h);
  return SpectralField(c.basis_ptr(), std::move(out));
}

SpectralField apply_resolvent(const SpectralField& c, double h) {
  if (!(h >= 0.0)) throw std::invalid_argument("apply_resolvent: negative time step");
  const auto lambda = c.basis().eigenvalues();
  std::vector<double> out(c.coefficients().begin(), c.coefficients().end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] /= 1.0 + lambda[i] * h;
  return SpectralField(c.basis_ptr(), std::move(out));
}

SpectralField project(const SpectralField& c, std::size_t modes) {
  const SpectralBasis& basis = c.basis();
  if (modes > basis.modes_per_axis()) {
    throw std::invalid_argument("project: target exceeds basis modes");
  }
  std::vector<double> out(c.coefficients().begin(), c.coefficients().end());
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    const ModeIndex i = basis.mode_index(flat);
    if (i[0] > modes || i[1] > modes) out[flat] = 0.0;
  }
  return SpectralField(c.basis_ptr(), std::move(out));
}

GridField spectral_derivative_1d(const SpectralField& c) {
  const SpectralBasis& basis = c.basis();
  if (basis.dimension() != 1) {
    throw std::invalid_argument("spectral_derivative_1d: basis is not one-dimensional");
  }
  std::vector<double> out(basis.size());
  apply_axis(basis.derivative_table(), basis.modes_per_axis(), false, c.coefficients(), out, 0, 1);
  return GridField(c.basis_ptr(), std::move(out));
}

SpectralField zero_pad(const SpectralField& c, const BasisPtr& target) {
  const SpectralBasis& from = c.basis();
  if (target->dimension() != from.dimension()) {
    throw std::invalid_argument("zero_pad: dimension mismatch");
  }
  if (target->modes_per_axis() < from.modes_per_axis()) {
    throw std::invalid_argument("zero_pad: target basis is smaller than the source");
  }
  std::vector<double> out(target->size(), 0.0);
  for (std::size_t flat = 0; flat < from.size(); ++flat) {
    out[target->flat_index(from.mode_index(flat))] = c[flat];
  }
  return SpectralField(target, std::move(out));
}

double h_norm(const SpectralField& c) {
  double acc = 0.0;
  for (double v : c.coefficients()) acc += v * v;
  return std::sqrt(acc);
}

double h_distance(const SpectralField& a, const SpectralField& b) {
  if (a.size() != b.size()) throw std::invalid_argument("h_distance: size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

double grid_l2_norm(const GridField& v) {
  const SpectralBasis& basis = v.basis();
  double acc = 0.0;
  for (double x : v.values()) acc += x * x;
  double cells = static_cast<double>(basis.modes_per_axis() + 1);
  if (basis.dimension() == 2) cells *= cells;
  return std::sqrt(acc / cells);
}

double fractional_norm(const SpectralField& c, double r) {
  const auto lambda = c.basis().eigenvalues();
  double acc = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    acc += std::pow(lambda[i], 2.0 * r) * c[i] * c[i];
  }
  return std::sqrt(acc);
}

}  // namespace specmil
