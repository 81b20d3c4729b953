#include "specmil/noise.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "specmil/rng.hpp"

namespace specmil {

namespace {

double pairwise_sum(const double* data, std::size_t count, std::size_t stride) {
  if (count == 1) return data[0];
  const std::size_t half = count / 2;
  return pairwise_sum(data, half, stride) + pairwise_sum(data + half * stride, count - half, stride);
}

}  // namespace

std::string_view to_string(NoiseFamily family) {
  switch (family) {
    case NoiseFamily::sine: return "sine";
    case NoiseFamily::cosine: return "cosine";
    case NoiseFamily::tensor_sine: return "tensor_sine";
  }
  return "unknown";
}

NoiseFamily parse_noise_family(std::string_view name) {
  if (name == "sine") return NoiseFamily::sine;
  if (name == "cosine") return NoiseFamily::cosine;
  if (name == "tensor_sine") return NoiseFamily::tensor_sine;
  throw std::invalid_argument("unknown noise family '" + std::string(name) +
                              "' (expected sine, cosine or tensor_sine)");
}

QWienerSpec::QWienerSpec(NoiseFamily family, EigenvalueRule rule, std::size_t truncation)
    : family_(family), rule_(rule), truncation_(truncation) {
  if (!(rule.scale >= 0.0) || !std::isfinite(rule.scale) || !std::isfinite(rule.exponent)) {
    throw std::invalid_argument("QWienerSpec: eigenvalue scale must be finite and nonnegative");
  }
  if (rule.scale > 0.0 && rule.exponent <= (family == NoiseFamily::tensor_sine ? 2.0 : 1.0)) {
    // Not needed for finite truncations, but the untruncated operator would not be trace class.
    throw std::invalid_argument("QWienerSpec: eigenvalue exponent too small for a trace-class Q");
  }
  if (family_ == NoiseFamily::tensor_sine) {
    for (std::size_t j1 = 1; j1 <= truncation_; ++j1) {
      for (std::size_t j2 = 1; j2 <= truncation_; ++j2) {
        const ModeIndex j{j1, j2};
        const double mu = eigenvalue(j);
        if (mu != 0.0) active_.push_back({j, mu});
      }
    }
  } else {
    const std::size_t first = family_ == NoiseFamily::cosine ? 0 : 1;
    for (std::size_t j = first; j <= truncation_; ++j) {
      const ModeIndex idx{j, 0};
      const double mu = eigenvalue(idx);
      if (mu != 0.0) active_.push_back({idx, mu});
    }
  }
}

QWienerSpec QWienerSpec::with_truncation(std::size_t truncation) const {
  return QWienerSpec(family_, rule_, truncation);
}

double QWienerSpec::eigenvalue(const ModeIndex& j) const {
  std::size_t order = j[0];
  if (family_ == NoiseFamily::tensor_sine) {
    if (j[0] == 0 || j[1] == 0) return 0.0;
    order = j[0] + j[1];
  }
  if (order == 0) return 0.0;  // constant cosine mode
  return rule_.scale * std::pow(static_cast<double>(order), -rule_.exponent);
}

double QWienerSpec::eigenfunction(const ModeIndex& j, const Point& x) const {
  constexpr double pi = std::numbers::pi;
  const double sqrt2 = std::numbers::sqrt2;
  switch (family_) {
    case NoiseFamily::sine:
      return sqrt2 * std::sin(static_cast<double>(j[0]) * pi * x[0]);
    case NoiseFamily::cosine:
      if (j[0] == 0) return 1.0;
      return sqrt2 * std::cos(static_cast<double>(j[0]) * pi * x[0]);
    case NoiseFamily::tensor_sine:
      return 2.0 * std::sin(static_cast<double>(j[0]) * pi * x[0]) *
             std::sin(static_cast<double>(j[1]) * pi * x[1]);
  }
  return 0.0;
}

MasterPath::MasterPath(std::uint64_t seed, std::size_t fine_steps, const QWienerSpec& spec,
                       double horizon)
    : seed_(seed),
      fine_steps_(fine_steps),
      horizon_(horizon),
      family_(spec.family()),
      mode_budget_(spec.truncation()) {
  if (fine_steps == 0) throw std::invalid_argument("MasterPath: fine_steps must be positive");
  if (!(horizon > 0.0)) throw std::invalid_argument("MasterPath: horizon must be positive");
  for (const NoiseMode& mode : spec.active_modes()) slots_.push_back(mode.index);
  const std::size_t slots = slots_.size();

  std::size_t base = fine_steps;
  int levels = 0;
  while (base % 2 == 0) {
    base /= 2;
    ++levels;
  }

  NormalGenerator normal(seed);
  std::vector<double> current(base * slots);
  const double base_sd = std::sqrt(horizon / static_cast<double>(base));
  for (double& x : current) x = base_sd * normal();

  std::size_t intervals = base;
  for (int level = 0; level < levels; ++level) {
    const double half_sd = 0.5 * std::sqrt(horizon / static_cast<double>(intervals));
    std::vector<double> next(2 * intervals * slots);
    for (std::size_t i = 0; i < intervals; ++i) {
      for (std::size_t s = 0; s < slots; ++s) {
        const double parent = current[i * slots + s];
        const double left = 0.5 * parent + half_sd * normal();
        next[(2 * i) * slots + s] = left;
        next[(2 * i + 1) * slots + s] = parent - left;
      }
    }
    current = std::move(next);
    intervals *= 2;
  }
  fine_ = std::move(current);
  draws_ = normal.draws();
}

std::optional<std::size_t> MasterPath::slot(const ModeIndex& j) const {
  // Slots are lexicographically sorted; linear scan is fine at these sizes.
  for (std::size_t s = 0; s < slots_.size(); ++s) {
    if (slots_[s] == j) return s;
  }
  return std::nullopt;
}

double MasterPath::increment(std::size_t slot, std::size_t m, std::size_t steps) const {
  if (steps == 0 || fine_steps_ % steps != 0) {
    throw std::invalid_argument("MasterPath::increment: " + std::to_string(steps) +
                                " steps do not divide the master resolution " +
                                std::to_string(fine_steps_));
  }
  if (m >= steps || slot >= slots_.size()) {
    throw std::out_of_range("MasterPath::increment: step or slot out of range");
  }
  const std::size_t window = fine_steps_ / steps;
  const std::size_t stride = slots_.size();
  return pairwise_sum(fine_.data() + m * window * stride + slot, window, stride);
}

NoiseSynthesizer::NoiseSynthesizer(const QWienerSpec& spec, BasisPtr basis)
    : basis_(std::move(basis)), truncation_(spec.truncation()) {
  if (spec.dimension() != basis_->dimension()) {
    throw std::invalid_argument("NoiseSynthesizer: noise family does not match basis dimension");
  }
  const std::size_t n = basis_->modes_per_axis();
  const auto& modes = spec.active_modes();
  active_ = modes.size();
  if (spec.family() == NoiseFamily::tensor_sine) {
    tensor_ = true;
    const double sqrt2 = std::numbers::sqrt2;
    table_.resize(n * truncation_);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 1; j <= truncation_; ++j) {
        table_[k * truncation_ + (j - 1)] =
            sqrt2 * std::sin(std::numbers::pi * static_cast<double>(j * (k + 1)) /
                             static_cast<double>(n + 1));
      }
    }
    for (const NoiseMode& mode : modes) {
      tensor_offset_.push_back((mode.index[0] - 1) * truncation_ + (mode.index[1] - 1));
    }
  } else {
    table_.resize(n * active_);
    for (std::size_t k = 0; k < n; ++k) {
      const Point x = basis_->grid_point(k);
      for (std::size_t a = 0; a < active_; ++a) {
        table_[k * active_ + a] = spec.eigenfunction(modes[a].index, x);
      }
    }
  }
}

GridField NoiseSynthesizer::synthesize(std::span<const double> amplitudes) const {
  if (amplitudes.size() != active_) {
    throw std::invalid_argument("NoiseSynthesizer: amplitude count mismatch");
  }
  const std::size_t n = basis_->modes_per_axis();
  std::vector<double> out(basis_->size(), 0.0);
  if (!tensor_) {
    for (std::size_t k = 0; k < n; ++k) {
      const double* row = table_.data() + k * active_;
      double acc = 0.0;
      for (std::size_t a = 0; a < active_; ++a) acc += row[a] * amplitudes[a];
      out[k] = acc;
    }
    return GridField(basis_, std::move(out));
  }
  // W = S A S^T with S[k][j] = sqrt(2) sin(j pi x_k), A the K x K amplitude matrix.
  const std::size_t kk = truncation_;
  std::vector<double> amp(kk * kk, 0.0);
  for (std::size_t a = 0; a < active_; ++a) amp[tensor_offset_[a]] = amplitudes[a];
  std::vector<double> tmp(n * kk, 0.0);  // tmp[k1][j2] = sum_j1 S[k1][j1] A[j1][j2]
  for (std::size_t k1 = 0; k1 < n; ++k1) {
    double* trow = tmp.data() + k1 * kk;
    for (std::size_t j1 = 0; j1 < kk; ++j1) {
      const double s = table_[k1 * kk + j1];
      const double* arow = amp.data() + j1 * kk;
      for (std::size_t j2 = 0; j2 < kk; ++j2) trow[j2] += s * arow[j2];
    }
  }
  for (std::size_t k1 = 0; k1 < n; ++k1) {
    const double* trow = tmp.data() + k1 * kk;
    for (std::size_t k2 = 0; k2 < n; ++k2) {
      const double* srow = table_.data() + k2 * kk;
      double acc = 0.0;
      for (std::size_t j2 = 0; j2 < kk; ++j2) acc += trow[j2] * srow[j2];
      out[k1 * n + k2] = acc;
    }
  }
  return GridField(basis_, std::move(out));
}

IncrementSampler::IncrementSampler(const MasterPath& path, const QWienerSpec& spec, BasisPtr basis,
                                   std::size_t steps)
    : path_(&path), spec_(spec), steps_(steps), synth_(spec, std::move(basis)) {
  if (steps == 0 || path.fine_steps() % steps != 0) {
    throw std::invalid_argument("IncrementSampler: " + std::to_string(steps) +
                                " steps do not divide the master resolution " +
                                std::to_string(path.fine_steps()));
  }
  if (spec.family() != path.family()) {
    throw std::invalid_argument("IncrementSampler: noise family differs from the master path");
  }
  if (spec.truncation() > path.mode_budget()) {
    throw std::invalid_argument("IncrementSampler: truncation K=" +
                                std::to_string(spec.truncation()) + " exceeds master budget " +
                                std::to_string(path.mode_budget()));
  }
  for (const NoiseMode& mode : spec.active_modes()) {
    const auto slot = path.slot(mode.index);
    if (!slot) throw std::invalid_argument("IncrementSampler: mode missing from master path");
    slots_.push_back(*slot);
    sqrt_mu_.push_back(std::sqrt(mode.mu));
  }
}

std::vector<double> IncrementSampler::mode_increments(std::size_t m) {
  std::vector<double> out(slots_.size());
  for (std::size_t a = 0; a < slots_.size(); ++a) out[a] = path_->increment(slots_[a], m, steps_);
  delivered_ += out.size();
  return out;
}

GridField IncrementSampler::increment(std::size_t m) {
  std::vector<double> amplitudes = mode_increments(m);
  for (std::size_t a = 0; a < amplitudes.size(); ++a) amplitudes[a] *= sqrt_mu_[a];
  return synth_.synthesize(amplitudes);
}

GridField sample_increment(const MasterPath& path, const QWienerSpec& spec, const BasisPtr& basis,
                           std::size_t m, std::size_t steps) {
  IncrementSampler sampler(path, spec, basis, steps);
  return sampler.increment(m);
}

GridField quadrature_field(const QWienerSpec& spec, const BasisPtr& basis, double h) {
  if (spec.dimension() != basis->dimension()) {
    throw std::invalid_argument("quadrature_field: noise family does not match basis dimension");
  }
  std::vector<double> out(basis->size(), 0.0);
  for (std::size_t k = 0; k < out.size(); ++k) {
    const Point x = basis->grid_point(k);
    double acc = 0.0;
    for (const NoiseMode& mode : spec.active_modes()) {
      const double g = spec.eigenfunction(mode.index, x);
      acc += mode.mu * g * g;
    }
    out[k] = h * acc;
  }
  return GridField(basis, std::move(out));
}

std::uint64_t count_random_variables(std::uint64_t steps, const QWienerSpec& spec) {
  return steps * static_cast<std::uint64_t>(spec.active_count());
}

}  // namespace specmil
