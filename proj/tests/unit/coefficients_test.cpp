#include <doctest.h>

#include <vector>

#include "specmil/coefficients.hpp"
#include "test_support.hpp"

using namespace specmil;

namespace {

GridField constant(const BasisPtr& b, double value) {
  return GridField(b, std::vector<double>(b->size(), value));
}

}  // namespace

TEST_CASE("drift evaluation") {
  const auto b = SpectralBasis::create(1, 6, 1.0);
  const GridField one = eval_drift(pairs::reaction_diffusion(), constant(b, 0.0));
  for (double x : one.values()) CHECK(x == 1.0);
  CHECK(testing_support::max_abs(
            eval_drift(pairs::deterministic(), constant(b, 3.0)).values()) == 0.0);

  NemytskiiPair identity{"identity", [](const Point&, double y) { return y; },
                         [](const Point&, double) { return 0.0; },
                         [](const Point&, double) { return 0.0; }, true};
  const GridField v(b, testing_support::random_values(6, 4));
  const GridField f = eval_drift(identity, v);
  for (std::size_t k = 0; k < 6; ++k) CHECK(f[k] == v[k]);
}

TEST_CASE("diffusion factor evaluation") {
  const auto b = SpectralBasis::create(1, 4, 1.0);
  const GridField reaction = eval_diffusion_factor(pairs::reaction_diffusion(), constant(b, 0.0));
  for (double x : reaction.values()) CHECK(x == 1.0);
  const GridField linear = eval_diffusion_factor(pairs::linear_multiplicative(), constant(b, 0.0));
  for (double x : linear.values()) CHECK(x == 0.0);
  NemytskiiPair additive{"additive", [](const Point&, double) { return 0.0; },
                         [](const Point&, double) { return 1.0; },
                         [](const Point&, double) { return 0.0; }, true};
  const GridField v(b, testing_support::random_values(4, 8));
  const GridField unit = eval_diffusion_factor(additive, v);
  for (double x : unit.values()) CHECK(x == 1.0);
  const GridField zero = constant(b, 0.0);
  CHECK(testing_support::max_abs(
            eval_milstein_correction(additive, v, constant(b, 0.7), zero).values()) == 0.0);
}

TEST_CASE("Milstein correction") {
  const auto b = SpectralBasis::create(1, 5, 1.0);
  const GridField zero = constant(b, 0.0);
  const GridField dW = constant(b, 0.3);
  const GridField quad = constant(b, 0.01);
  // 1/2 b_y b at y = 0 is -1/2 for the reaction-diffusion pair
  const GridField c = eval_milstein_correction(pairs::reaction_diffusion(), zero, dW, quad);
  for (double x : c.values()) CHECK(x == doctest::Approx(-0.5 * (0.09 - 0.01)));
  CHECK(testing_support::max_abs(
            eval_milstein_correction(pairs::reaction_diffusion(), zero, zero, zero).values()) ==
        0.0);

  // b = y: the bracket [1 + dW + dW^2/2 - quad/2] y minus the Euler part
  const GridField v(b, testing_support::random_values(5, 12));
  const GridField dWr(b, testing_support::random_values(5, 13));
  const GridField qr(b, {0.01, 0.02, 0.03, 0.02, 0.01});
  const GridField lin = eval_milstein_correction(pairs::linear_multiplicative(), v, dWr, qr);
  for (std::size_t k : {0u, 2u, 4u}) {
    const double bracket = (1.0 + dWr[k] + 0.5 * dWr[k] * dWr[k] - 0.5 * qr[k]) * v[k];
    CHECK(lin[k] == doctest::Approx(bracket - v[k] - dWr[k] * v[k]).epsilon(1e-13));
  }

  const auto other = SpectralBasis::create(1, 4, 1.0);
  CHECK_THROWS_AS(eval_milstein_correction(pairs::linear_multiplicative(), v, constant(other, 0.0),
                                           qr),
                  std::invalid_argument);
}

TEST_CASE("analytic b_y agrees with finite differences for every preset pair") {
  std::vector<Point> xs{{0.1, 0.0}, {0.5, 0.0}, {0.9, 0.3}};
  std::vector<double> ys{-2.0, -0.7, 0.0, 0.4, 1.3, 3.0};
  for (const NemytskiiPair& pair :
       {pairs::reaction_diffusion(), pairs::reaction_diffusion_bounded(),
        pairs::linear_multiplicative(), pairs::deterministic()}) {
    CAPTURE(pair.name);
    CHECK(derivative_consistency_error(pair, xs, ys) < 1e-6);
  }
  NemytskiiPair wrong = pairs::reaction_diffusion();
  wrong.diffusion_dy = [](const Point&, double y) { return -1.0 + y; };
  CHECK(derivative_consistency_error(wrong, xs, ys) > 1e-3);
}

TEST_CASE("evaluation is pointwise: permuting nodes permutes outputs") {
  const auto b = SpectralBasis::create(1, 6, 1.0);
  const auto vals = testing_support::random_values(6, 21);
  std::vector<double> rev(vals.rbegin(), vals.rend());
  NemytskiiPair pair = pairs::reaction_diffusion();
  const GridField fa = eval_diffusion_factor(pair, GridField(b, vals));
  const GridField fb = eval_diffusion_factor(pair, GridField(b, rev));
  for (std::size_t k = 0; k < 6; ++k) CHECK(fa[k] == fb[5 - k]);
}
