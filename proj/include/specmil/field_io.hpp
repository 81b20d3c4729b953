#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "specmil/spectral.hpp"

namespace specmil {

enum class Representation : std::uint32_t { spectral = 0, grid = 1 };

/// Decoded field file contents, independent of any basis.
struct RawField {
  std::uint32_t dimension = 1;
  std::uint32_t modes_per_axis = 0;
  Representation representation = Representation::spectral;
  std::vector<double> values;
};

// Layout (all little-endian):
//   bytes 0..3   magic "SMFD"
//   u32          dimension d
//   u32          modes per axis N
//   u32          representation tag (0 spectral, 1 grid)
//   f64 x N^d    values in lexicographic index order
void write_field(std::ostream& out, const SpectralField& c);
void write_field(std::ostream& out, const GridField& v);
void write_field(const std::filesystem::path& path, const SpectralField& c);

RawField read_field(std::istream& in);
RawField read_field(const std::filesystem::path& path);

/// Bind decoded coefficients to a basis; throws on shape or tag mismatch.
SpectralField as_spectral(const RawField& raw, const BasisPtr& basis);
GridField as_grid(const RawField& raw, const BasisPtr& basis);

}  // namespace specmil
