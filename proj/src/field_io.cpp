#include "specmil/field_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace specmil {

namespace {

constexpr std::array<char, 4> kMagic = {'S', 'M', 'F', 'D'};

void put_u32(std::ostream& out, std::uint32_t v) {
  std::array<char, 4> bytes{};
  for (int i = 0; i < 4; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xffu);
  out.write(bytes.data(), bytes.size());
}

void put_f64(std::ostream& out, double x) {
  const auto bits = std::bit_cast<std::uint64_t>(x);
  std::array<char, 8> bytes{};
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xffu);
  out.write(bytes.data(), bytes.size());
}

std::uint64_t get_bytes(std::istream& in, int count) {
  std::array<unsigned char, 8> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), count);
  if (!in) throw std::runtime_error("read_field: truncated input");
  std::uint64_t v = 0;
  for (int i = 0; i < count; ++i) v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return v;
}

void write_values(std::ostream& out, const SpectralBasis& basis, Representation tag,
                  std::span<const double> values) {
  out.write(kMagic.data(), kMagic.size());
  put_u32(out, static_cast<std::uint32_t>(basis.dimension()));
  put_u32(out, static_cast<std::uint32_t>(basis.modes_per_axis()));
  put_u32(out, static_cast<std::uint32_t>(tag));
  for (double x : values) put_f64(out, x);
  if (!out) throw std::runtime_error("write_field: stream error");
}

void check_shape(const RawField& raw, const SpectralBasis& basis) {
  if (raw.dimension != static_cast<std::uint32_t>(basis.dimension()) ||
      raw.modes_per_axis != basis.modes_per_axis()) {
    throw std::invalid_argument("field file shape does not match basis");
  }
}

}  // namespace

void write_field(std::ostream& out, const SpectralField& c) {
  write_values(out, c.basis(), Representation::spectral, c.coefficients());
}

void write_field(std::ostream& out, const GridField& v) {
  write_values(out, v.basis(), Representation::grid, v.values());
}

void write_field(const std::filesystem::path& path, const SpectralField& c) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_field: cannot open " + path.string());
  write_field(out, c);
}

RawField read_field(std::istream& in) {
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw std::runtime_error("read_field: bad magic");
  RawField raw;
  raw.dimension = static_cast<std::uint32_t>(get_bytes(in, 4));
  raw.modes_per_axis = static_cast<std::uint32_t>(get_bytes(in, 4));
  const auto tag = static_cast<std::uint32_t>(get_bytes(in, 4));
  if (raw.dimension != 1 && raw.dimension != 2) throw std::runtime_error("read_field: bad dimension");
  if (tag > 1) throw std::runtime_error("read_field: bad representation tag");
  raw.representation = static_cast<Representation>(tag);
  std::size_t count = raw.modes_per_axis;
  if (raw.dimension == 2) count *= raw.modes_per_axis;
  raw.values.resize(count);
  for (double& x : raw.values) x = std::bit_cast<double>(get_bytes(in, 8));
  return raw;
}

RawField read_field(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_field: cannot open " + path.string());
  return read_field(in);
}

SpectralField as_spectral(const RawField& raw, const BasisPtr& basis) {
  check_shape(raw, *basis);
  if (raw.representation != Representation::spectral) {
    throw std::invalid_argument("field file holds grid values, not coefficients");
  }
  return SpectralField(basis, raw.values);
}

GridField as_grid(const RawField& raw, const BasisPtr& basis) {
  check_shape(raw, *basis);
  if (raw.representation != Representation::grid) {
    throw std::invalid_argument("field file holds coefficients, not grid values");
  }
  return GridField(basis, raw.values);
}

}  // namespace specmil
