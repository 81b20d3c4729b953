#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace specmil {

/// A point of the unit cube (0,1)^d; unused trailing coordinates are zero.
using Point = std::array<double, 2>;

/// 1-based mode numbers (i_1, i_2); i_2 is 0 for one-dimensional bases.
using ModeIndex = std::array<std::size_t, 2>;

/**
 * Eigensystem of A = kappa * Laplacian with homogeneous Dirichlet boundary
 * conditions on (0,1)^d, d in {1, 2}, truncated to the index set {1..N}^d.
 *
 * Eigenfunctions are e_i(x) = 2^{d/2} prod_a sin(i_a pi x_a) with eigenvalues
 * lambda_i = kappa pi^2 |i|^2 (stored as positive numbers, A e_i = -lambda_i e_i).
 * Collocation nodes are the interior points k/(N+1), k = 1..N, per axis.
 *
 * Coefficients and grid values are stored lexicographically: the first axis
 * is the slow index, i.e. flat = (i_1 - 1) * N + (i_2 - 1).
 */
class SpectralBasis {
 public:
  SpectralBasis(int dimension, std::size_t modes_per_axis, double kappa);

  static std::shared_ptr<const SpectralBasis> create(int dimension, std::size_t modes_per_axis,
                                                     double kappa);

  int dimension() const { return dimension_; }
  std::size_t modes_per_axis() const { return modes_; }
  double kappa() const { return kappa_; }

  /// N^d, the number of coefficients (and of grid nodes).
  std::size_t size() const { return size_; }

  std::span<const double> eigenvalues() const { return eigenvalues_; }

  /// Node coordinate (k+1)/(N+1) for a 0-based per-axis node index.
  double node(std::size_t k) const;
  Point grid_point(std::size_t flat) const;

  ModeIndex mode_index(std::size_t flat) const;
  std::size_t flat_index(const ModeIndex& mode) const;

  /// Pointwise evaluation of e_i at an arbitrary point.
  double eigenfunction(std::size_t flat, const Point& x) const;

  /// [k * N + n] = sqrt(2) sin((n+1) pi x_k): per-axis synthesis matrix.
  std::span<const double> sine_table() const { return sine_table_; }

  /// [k * N + n] = sqrt(2) (n+1) pi cos((n+1) pi x_k).
  std::span<const double> derivative_table() const { return derivative_table_; }

 private:
  int dimension_;
  std::size_t modes_;
  double kappa_;
  std::size_t size_;
  std::vector<double> eigenvalues_;
  std::vector<double> sine_table_;
  std::vector<double> derivative_table_;
};

using BasisPtr = std::shared_ptr<const SpectralBasis>;

/// Spectral coefficients c_i over the index set of a basis.
class SpectralField {
 public:
  SpectralField(BasisPtr basis, std::vector<double> coefficients);

  static SpectralField zeros(BasisPtr basis);

  const SpectralBasis& basis() const { return *basis_; }
  const BasisPtr& basis_ptr() const { return basis_; }
  std::span<const double> coefficients() const { return coefficients_; }
  std::size_t size() const { return coefficients_.size(); }
  double operator[](std::size_t i) const { return coefficients_[i]; }

 private:
  BasisPtr basis_;
  std::vector<double> coefficients_;
};

/// Values at the collocation nodes of a basis.
class GridField {
 public:
  GridField(BasisPtr basis, std::vector<double> values);

  static GridField zeros(BasisPtr basis);

  const SpectralBasis& basis() const { return *basis_; }
  const BasisPtr& basis_ptr() const { return basis_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t k) const { return values_[k]; }

 private:
  BasisPtr basis_;
  std::vector<double> values_;
};

/// Grid values -> coefficients; exact inverse of to_grid (discrete orthogonality).
SpectralField to_spectral(const GridField& v);

/// Coefficients -> grid values v(x_k) = sum_i c_i e_i(x_k).
GridField to_grid(const SpectralField& c);

/// c_i -> exp(-lambda_i h) c_i. Throws std::invalid_argument for h < 0.
SpectralField apply_semigroup(const SpectralField& c, double h);

/// c_i -> c_i / (1 + lambda_i h), the resolvent (I - hA)^{-1}. Throws for h < 0.
SpectralField apply_resolvent(const SpectralField& c, double h);

/// Zero every coefficient with an index component above `modes`.
SpectralField project(const SpectralField& c, std::size_t modes);

/// Grid values of v'(x_k) = sum_n c_n n pi sqrt(2) cos(n pi x_k). Requires d = 1.
GridField spectral_derivative_1d(const SpectralField& c);

/// Embed coarse coefficients into a larger basis of the same dimension and
/// diffusivity; modes absent from the coarse basis are zero.
SpectralField zero_pad(const SpectralField& c, const BasisPtr& target);

/// ||v||_H = (sum_i c_i^2)^{1/2}.
double h_norm(const SpectralField& c);

/// ||a - b||_H for fields on bases of equal size.
double h_distance(const SpectralField& a, const SpectralField& b);

/// Discrete L2 norm from grid values: (sum_k v_k^2 / (N+1)^d)^{1/2}.
double grid_l2_norm(const GridField& v);

/// Diagnostic ||(-A)^r v||_H = (sum_i lambda_i^{2r} c_i^2)^{1/2}.
double fractional_norm(const SpectralField& c, double r);

}  // namespace specmil
