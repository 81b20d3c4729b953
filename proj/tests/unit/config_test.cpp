#include <doctest.h>

#include <sstream>

#include "specmil/config.hpp"

using namespace specmil;

TEST_CASE("parse a full config") {
  std::istringstream in(R"(# study
problem = reacdiff1d
schemes = milstein, implicit_euler
ladder = 2,4, 8
ref_n = 16   # inline comment
ref_m = 256
ref_k = 16
paths = 20
seed = 123456789012
out = results.csv
threads = 3
metric = rms
coupling = implicit_euler:3
noise_exponent = 2.5
)");
  const ExperimentConfig c = parse_config(in);
  CHECK(c.problem == "reacdiff1d");
  REQUIRE(c.schemes.size() == 2);
  CHECK(c.schemes[1] == SchemeKind::implicit_euler);
  CHECK(c.ladder == std::vector<std::size_t>{2, 4, 8});
  CHECK(c.ref_n == 16);
  CHECK(c.ref_m == 256);
  CHECK(c.paths == 20);
  CHECK(c.seed == 123456789012ull);
  CHECK(c.out == "results.csv");
  CHECK(c.threads == 3);
  CHECK(c.coupling.at(SchemeKind::implicit_euler) == 3);
  CHECK(c.resolve_problem().noise_rule.exponent == 2.5);
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("write and parse round-trip") {
  ExperimentConfig c;
  c.problem = "heat2d";
  c.schemes = {SchemeKind::milstein, SchemeKind::splitting};
  c.ladder = {2, 4};
  c.ref_n = 8;
  c.ref_m = 64;
  c.ref_k = 8;
  c.paths = 7;
  c.seed = 9;
  c.noise_family = NoiseFamily::tensor_sine;
  c.advection = AdvectionForm::product;
  std::stringstream buf;
  write_config(c, buf);
  const ExperimentConfig back = parse_config(buf);
  CHECK(back.problem == "heat2d");
  CHECK(back.schemes == c.schemes);
  CHECK(back.ladder == c.ladder);
  CHECK(back.ref_m == 64);
  CHECK(back.seed == 9);
  CHECK(back.noise_family == NoiseFamily::tensor_sine);
  CHECK(back.advection == AdvectionForm::product);
}

TEST_CASE("malformed configs are rejected") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
  };
  CHECK_THROWS_AS(parse("colour = blue\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse("paths = many\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse("paths\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse("problem = wave\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse("schemes = rk4\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse("coupling = milstein\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse("metric = median\n"), std::invalid_argument);
  CHECK_THROWS_AS(load_config("/nonexistent/specmil.cfg"), std::runtime_error);
}

TEST_CASE("validation of ladders and schemes") {
  ExperimentConfig c;
  c.problem = "reacdiff1d";
  c.ladder = {2, 4, 64};
  c.ref_n = 32;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.ladder = {2, 4};
  c.ref_k = 2;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.ref_k = 32;
  c.schemes = {SchemeKind::splitting};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.schemes = {SchemeKind::milstein};
  c.metric = ErrorMetric::pathwise;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.paths = 1;
  CHECK_NOTHROW(c.validate());
}
