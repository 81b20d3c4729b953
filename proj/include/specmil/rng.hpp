#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace specmil {

/**
 * Seedable standard-normal source with a draw counter.
 *
 * Uniforms come from std::mt19937_64 (53 high bits) and are turned into
 * normals by the Marsaglia polar method, so a given seed yields the same
 * sequence on every platform (std::normal_distribution is not portable).
 */
class NormalGenerator {
 public:
  static constexpr std::string_view algorithm = "mt19937_64/marsaglia-polar";

  explicit NormalGenerator(std::uint64_t seed) : engine_(seed) {}

  double operator()();

  /// Number of standard normals handed out so far.
  std::uint64_t draws() const { return draws_; }

 private:
  double uniform_pm1();

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
  std::uint64_t draws_ = 0;
};

/// Seed for stream `index` derived from a base seed (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace specmil
