#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "specmil/spectral.hpp"

namespace specmil {

/// Eigenfunction families of the noise covariance Q.
enum class NoiseFamily {
  sine,         ///< g_j = sqrt(2) sin(j pi x), j >= 1
  cosine,       ///< g_0 = 1, g_j = sqrt(2) cos(j pi x), j >= 1; mu_0 = 0
  tensor_sine,  ///< d = 2, g_(j1,j2) = e_(j1,j2)
};

std::string_view to_string(NoiseFamily family);
NoiseFamily parse_noise_family(std::string_view name);

/// mu_j = scale * order(j)^(-exponent), order(j) = j in 1D and j1 + j2 for the
/// tensor family. The constant cosine mode always has mu_0 = 0.
struct EigenvalueRule {
  double exponent = 2.0;
  double scale = 1.0;

  static constexpr std::string_view name = "power";
};

struct NoiseMode {
  ModeIndex index{};
  double mu = 0.0;
};

/**
 * Truncated covariance specification: family, eigenvalue rule and the
 * truncation K of the index set J_K ({1..K}, {0..K} or {1..K}^2).
 */
class QWienerSpec {
 public:
  QWienerSpec(NoiseFamily family, EigenvalueRule rule, std::size_t truncation);

  NoiseFamily family() const { return family_; }
  const EigenvalueRule& rule() const { return rule_; }
  std::size_t truncation() const { return truncation_; }
  int dimension() const { return family_ == NoiseFamily::tensor_sine ? 2 : 1; }

  QWienerSpec with_truncation(std::size_t truncation) const;

  double eigenvalue(const ModeIndex& j) const;
  double eigenfunction(const ModeIndex& j, const Point& x) const;

  /// Modes of J_K with mu_j != 0, in lexicographic order.
  const std::vector<NoiseMode>& active_modes() const { return active_; }
  std::size_t active_count() const { return active_.size(); }

 private:
  NoiseFamily family_;
  EigenvalueRule rule_;
  std::size_t truncation_;
  std::vector<NoiseMode> active_;
};

/**
 * Finest-resolution Brownian increments of every active mode of a reference
 * truncation, generated once from a seed.
 *
 * The time grid has `fine_steps` = M0 * 2^L intervals (M0 odd). Increments are
 * built by Brownian-bridge refinement: M0 base increments, then L halving
 * levels, each drawing one normal per (interval, mode) in interval-major,
 * mode-minor order. The coarse path of a finer master therefore agrees with a
 * coarser master of the same seed up to rounding, and exactly fine_steps *
 * modes normals are drawn.
 */
class MasterPath {
 public:
  MasterPath(std::uint64_t seed, std::size_t fine_steps, const QWienerSpec& spec,
             double horizon = 1.0);

  std::uint64_t seed() const { return seed_; }
  std::size_t fine_steps() const { return fine_steps_; }
  double horizon() const { return horizon_; }
  NoiseFamily family() const { return family_; }
  std::size_t mode_budget() const { return mode_budget_; }
  std::size_t slot_count() const { return slots_.size(); }

  /// Standard normals drawn from the generator while building the path.
  std::uint64_t draws() const { return draws_; }

  std::optional<std::size_t> slot(const ModeIndex& j) const;

  /// Increment of beta_j (j given by slot) over [m T/M, (m+1) T/M]; M must
  /// divide fine_steps. Summed pairwise, so for even windows the two halves
  /// add up bitwise to the whole.
  double increment(std::size_t slot, std::size_t m, std::size_t steps) const;

  /// Fine increments laid out as [step * slot_count + slot].
  std::span<const double> fine_increments() const { return fine_; }

 private:
  std::uint64_t seed_;
  std::size_t fine_steps_;
  double horizon_;
  NoiseFamily family_;
  std::size_t mode_budget_;
  std::vector<ModeIndex> slots_;
  std::vector<double> fine_;
  std::uint64_t draws_ = 0;
};

/// Maps per-mode amplitudes a_j onto grid values sum_j a_j g_j(x_k).
class NoiseSynthesizer {
 public:
  NoiseSynthesizer(const QWienerSpec& spec, BasisPtr basis);

  /// `amplitudes` follows spec.active_modes() order.
  GridField synthesize(std::span<const double> amplitudes) const;

  const BasisPtr& basis() const { return basis_; }

 private:
  BasisPtr basis_;
  std::size_t truncation_ = 0;
  bool tensor_ = false;
  std::size_t active_ = 0;
  std::vector<double> table_;               // 1D: [k * active + a]; tensor: [k * K + (j-1)]
  std::vector<std::size_t> tensor_offset_;  // tensor: active mode -> (j1-1) * K + (j2-1)
};

/**
 * Increment source for one scheme run at (M, K) on a master path. Counts the
 * Brownian increments it hands out, i.e. the random variables the run uses.
 */
class IncrementSampler {
 public:
  IncrementSampler(const MasterPath& path, const QWienerSpec& spec, BasisPtr basis,
                   std::size_t steps);

  std::size_t steps() const { return steps_; }
  double step_size() const { return path_->horizon() / static_cast<double>(steps_); }
  const QWienerSpec& spec() const { return spec_; }

  /// Delta beta_j for the active modes at step m (not scaled by sqrt(mu)).
  std::vector<double> mode_increments(std::size_t m);

  /// Grid values of Delta W_m = sum_j sqrt(mu_j) Delta beta_j g_j(x_k).
  GridField increment(std::size_t m);

  std::uint64_t delivered() const { return delivered_; }

 private:
  const MasterPath* path_;
  QWienerSpec spec_;
  std::size_t steps_;
  std::vector<std::size_t> slots_;
  std::vector<double> sqrt_mu_;
  NoiseSynthesizer synth_;
  std::uint64_t delivered_ = 0;
};

/// One-off grid increment for step m of M; see IncrementSampler.
GridField sample_increment(const MasterPath& path, const QWienerSpec& spec, const BasisPtr& basis,
                           std::size_t m, std::size_t steps);

/// Grid values of h * sum_{j in J_K, mu_j != 0} mu_j g_j(x_k)^2.
GridField quadrature_field(const QWienerSpec& spec, const BasisPtr& basis, double h);

/// M * |{j in J_K : mu_j != 0}|.
std::uint64_t count_random_variables(std::uint64_t steps, const QWienerSpec& spec);

}  // namespace specmil
