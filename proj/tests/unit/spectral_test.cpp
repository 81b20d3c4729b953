#include <doctest.h>

#include <cmath>
#include <numbers>

#include "specmil/spectral.hpp"
#include "test_support.hpp"

using namespace specmil;
using testing_support::max_abs;
using testing_support::max_abs_diff;
using testing_support::random_values;

namespace {

constexpr double pi = std::numbers::pi;

// Direct summation v(x_k) = sum_i c_i e_i(x_k), independent of the table code.
std::vector<double> direct_synthesis(const SpectralBasis& basis, std::span<const double> c) {
  std::vector<double> v(basis.size(), 0.0);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const Point x = basis.grid_point(k);
    for (std::size_t i = 0; i < basis.size(); ++i) v[k] += c[i] * basis.eigenfunction(i, x);
  }
  return v;
}

}  // namespace

TEST_CASE("eigenvalues follow kappa pi^2 |i|^2") {
  const auto b1 = SpectralBasis::create(1, 6, 0.01);
  for (std::size_t i = 0; i < 6; ++i) {
    const double n = static_cast<double>(i + 1);
    CHECK(b1->eigenvalues()[i] == doctest::Approx(0.01 * pi * pi * n * n).epsilon(1e-15));
  }
  const auto b2 = SpectralBasis::create(2, 4, 0.02);
  for (std::size_t flat = 0; flat < b2->size(); ++flat) {
    const ModeIndex i = b2->mode_index(flat);
    const double s = static_cast<double>(i[0] * i[0] + i[1] * i[1]);
    CHECK(b2->eigenvalues()[flat] == doctest::Approx(0.02 * pi * pi * s).epsilon(1e-15));
    CHECK(b2->flat_index(i) == flat);
  }
}

TEST_CASE("grid nodes are interior points k/(N+1)") {
  const auto b = SpectralBasis::create(1, 7, 1.0);
  for (std::size_t k = 0; k < 7; ++k) CHECK(b->node(k) == doctest::Approx((k + 1) / 8.0));
  const auto b2 = SpectralBasis::create(2, 3, 1.0);
  const Point p = b2->grid_point(5);  // row 1, column 2
  CHECK(p[0] == doctest::Approx(0.5));
  CHECK(p[1] == doctest::Approx(0.75));
}

TEST_CASE("basis construction rejects bad arguments") {
  CHECK_THROWS_AS(SpectralBasis(3, 4, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(SpectralBasis(1, 0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(SpectralBasis(1, 4, 0.0), std::invalid_argument);
}

TEST_CASE("single sine mode maps to a unit coefficient") {
  const auto b = SpectralBasis::create(1, 8, 1.0);
  std::vector<double> v(8);
  for (std::size_t k = 0; k < 8; ++k) v[k] = std::sqrt(2.0) * std::sin(pi * b->node(k));
  const SpectralField c = to_spectral(GridField(b, v));
  CHECK(c[0] == doctest::Approx(1.0).epsilon(1e-14));
  for (std::size_t i = 1; i < 8; ++i) CHECK(std::abs(c[i]) < 1e-14);

  std::vector<double> unit(8, 0.0);
  unit[0] = 1.0;
  const GridField g = to_grid(SpectralField(b, unit));
  CHECK(max_abs_diff(g.values(), v) < 1e-14);
}

TEST_CASE("zero field stays zero through both transforms") {
  const auto b = SpectralBasis::create(2, 5, 1.0);
  const GridField g = to_grid(SpectralField::zeros(b));
  CHECK(max_abs(g.values()) == 0.0);
  CHECK(max_abs(to_spectral(g).coefficients()) == 0.0);
}

TEST_CASE("2D mode (1,1) gives 2 sin(pi x1) sin(pi x2)") {
  const auto b = SpectralBasis::create(2, 6, 1.0);
  std::vector<double> c(b->size(), 0.0);
  c[b->flat_index({1, 1})] = 1.0;
  const GridField g = to_grid(SpectralField(b, c));
  for (std::size_t k = 0; k < b->size(); ++k) {
    const Point x = b->grid_point(k);
    CHECK(g[k] == doctest::Approx(2.0 * std::sin(pi * x[0]) * std::sin(pi * x[1])).epsilon(1e-13));
  }
}

TEST_CASE("to_grid agrees with direct summation and round-trips") {
  for (int d : {1, 2}) {
    for (std::size_t n : {2u, 3u, 7u, 16u, 33u, 64u}) {
      if (d == 2 && n > 33) continue;
      const auto b = SpectralBasis::create(d, n, 0.5);
      const auto c = random_values(b->size(), 17 * n + d);
      const GridField g = to_grid(SpectralField(b, c));
      const auto direct = direct_synthesis(*b, c);
      CHECK(max_abs_diff(g.values(), direct) <= 1e-12 * (1.0 + max_abs(direct)));

      const SpectralField back = to_spectral(g);
      CHECK(max_abs_diff(back.coefficients(), c) <= 1e-12 * max_abs(c));

      const auto v = random_values(b->size(), 31 * n + d);
      const GridField again = to_grid(to_spectral(GridField(b, v)));
      CHECK(max_abs_diff(again.values(), v) <= 1e-12 * max_abs(v));
    }
  }
}

TEST_CASE("transforms are linear") {
  const auto b = SpectralBasis::create(2, 9, 1.0);
  const auto c1 = random_values(b->size(), 1);
  const auto c2 = random_values(b->size(), 2);
  std::vector<double> mix(b->size());
  for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = 2.5 * c1[i] - 0.75 * c2[i];
  const GridField g1 = to_grid(SpectralField(b, c1));
  const GridField g2 = to_grid(SpectralField(b, c2));
  const GridField gm = to_grid(SpectralField(b, mix));
  for (std::size_t k = 0; k < b->size(); ++k) {
    CHECK(std::abs(gm[k] - (2.5 * g1[k] - 0.75 * g2[k])) < 1e-13);
  }
}

TEST_CASE("discrete Parseval: grid L2 norm equals coefficient norm") {
  for (int d : {1, 2}) {
    for (std::size_t n : {2u, 8u, 31u}) {
      const auto b = SpectralBasis::create(d, n, 1.0);
      const SpectralField c(b, random_values(b->size(), n + 100 * d));
      const double grid = grid_l2_norm(to_grid(c));
      CHECK(grid == doctest::Approx(h_norm(c)).epsilon(1e-10));
    }
  }
}

TEST_CASE("semigroup factor, identity at h = 0 and composition law") {
  const auto b = SpectralBasis::create(1, 4, 0.01);
  const SpectralField unit(b, {1.0, 0.0, 0.0, 0.0});
  CHECK(apply_semigroup(unit, 1.0)[0] == doctest::Approx(std::exp(-pi * pi / 100.0)).epsilon(1e-15));

  const auto b2 = SpectralBasis::create(2, 12, 0.3);
  const SpectralField c(b2, random_values(b2->size(), 5));
  CHECK(max_abs_diff(apply_semigroup(c, 0.0).coefficients(), c.coefficients()) == 0.0);
  const SpectralField twice = apply_semigroup(apply_semigroup(c, 0.013), 0.029);
  const SpectralField once = apply_semigroup(c, 0.042);
  CHECK(max_abs_diff(twice.coefficients(), once.coefficients()) < 1e-14);
  CHECK(h_norm(once) <= h_norm(c));
  CHECK_THROWS_AS(apply_semigroup(c, -1e-3), std::invalid_argument);
}

TEST_CASE("resolvent acts as 1/(1 + lambda h)") {
  const auto b = SpectralBasis::create(1, 3, 0.01);
  const SpectralField unit(b, {1.0, 0.0, 0.0});
  CHECK(apply_resolvent(unit, 1.0)[0] == doctest::Approx(1.0 / (1.0 + pi * pi / 100.0)));
  CHECK_THROWS_AS(apply_resolvent(unit, -1.0), std::invalid_argument);
}

TEST_CASE("projection: identity at full size, idempotent, drops high modes") {
  const auto b = SpectralBasis::create(2, 6, 1.0);
  const SpectralField c(b, random_values(b->size(), 9));
  CHECK(max_abs_diff(project(c, 6).coefficients(), c.coefficients()) == 0.0);
  const SpectralField p = project(c, 3);
  CHECK(max_abs_diff(project(p, 3).coefficients(), p.coefficients()) == 0.0);
  for (std::size_t flat = 0; flat < b->size(); ++flat) {
    const ModeIndex i = b->mode_index(flat);
    if (i[0] > 3 || i[1] > 3) CHECK(p[flat] == 0.0);
    else CHECK(p[flat] == c[flat]);
  }
  const auto b1 = SpectralBasis::create(1, 5, 1.0);
  const SpectralField third(b1, {0.0, 0.0, 1.0, 0.0, 0.0});
  CHECK(max_abs(project(third, 2).coefficients()) == 0.0);
  CHECK_THROWS_AS(project(third, 6), std::invalid_argument);
}

TEST_CASE("spectral derivative of a sine series") {
  const auto b = SpectralBasis::create(1, 9, 1.0);  // node 5 is x = 1/2
  std::vector<double> unit(9, 0.0);
  unit[0] = 1.0;
  const GridField d = spectral_derivative_1d(SpectralField(b, unit));
  CHECK(std::abs(d[4]) < 1e-14);
  CHECK(d[0] == doctest::Approx(pi * std::sqrt(2.0) * std::cos(pi * 0.1)));
  CHECK(max_abs(spectral_derivative_1d(SpectralField::zeros(b)).values()) == 0.0);

  const auto b16 = SpectralBasis::create(1, 16, 1.0);
  const auto c = random_values(16, 77);
  const GridField dv = spectral_derivative_1d(SpectralField(b16, c));
  const double step = 1e-5;
  double worst = 0.0;
  for (std::size_t k = 0; k < 16; ++k) {
    const double x = b16->node(k);
    auto v = [&](double y) {
      double s = 0.0;
      for (std::size_t i = 0; i < 16; ++i) s += c[i] * b16->eigenfunction(i, {y, 0.0});
      return s;
    };
    const double fd = (v(x + step) - v(x - step)) / (2.0 * step);
    worst = std::max(worst, std::abs(fd - dv[k]) / std::max(1.0, std::abs(dv[k])));
  }
  CHECK(worst < 1e-6);
  CHECK_THROWS_AS(spectral_derivative_1d(SpectralField::zeros(SpectralBasis::create(2, 3, 1.0))),
                  std::invalid_argument);
}

TEST_CASE("zero padding embeds coefficients by mode index") {
  const auto small = SpectralBasis::create(2, 2, 1.0);
  const auto large = SpectralBasis::create(2, 4, 1.0);
  const SpectralField c(small, {1.0, 2.0, 3.0, 4.0});
  const SpectralField padded = zero_pad(c, large);
  CHECK(padded[large->flat_index({1, 1})] == 1.0);
  CHECK(padded[large->flat_index({1, 2})] == 2.0);
  CHECK(padded[large->flat_index({2, 1})] == 3.0);
  CHECK(padded[large->flat_index({2, 2})] == 4.0);
  CHECK(h_norm(padded) == doctest::Approx(h_norm(c)));
  CHECK_THROWS_AS(zero_pad(padded, small), std::invalid_argument);
}

TEST_CASE("size mismatch is rejected") {
  const auto b = SpectralBasis::create(1, 4, 1.0);
  CHECK_THROWS_AS(SpectralField(b, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(GridField(b, std::vector<double>(5, 0.0)), std::invalid_argument);
}

TEST_CASE("fractional norm weights by lambda^(2r)") {
  const auto b = SpectralBasis::create(1, 2, 1.0);
  const SpectralField c(b, {1.0, 1.0});
  const double l1 = pi * pi, l2 = 4.0 * pi * pi;
  CHECK(fractional_norm(c, 0.5) == doctest::Approx(std::sqrt(l1 + l2)));
  CHECK(fractional_norm(c, 0.0) == doctest::Approx(h_norm(c)));
}
