#include <doctest.h>

#include <cmath>

#include "robreg/model_core.hpp"
#include "robreg/tuning.hpp"

using namespace robreg;

namespace {

MomentProfile unit_profile() {
  MomentProfile p;
  p.sigma_x2 = 1.0;
  p.sigma_x4 = 1.0;
  p.sigma_x8 = 1.0;
  p.kurtosis_K = 1.0;
  p.sigma_noise = 1.0;
  p.sigma_op = 1.0;
  p.lambda_Sigma = 1.0;
  return p;
}

Rates rates_with(double r_d, double r_delta) {
  Rates r;
  r.r_d = r_d;
  r.r_delta = r_delta;
  return r;
}

}  // namespace

TEST_SUITE_BEGIN("fast");

TEST_CASE("lambda_star_prime formula evaluation") {
  MomentProfile p = unit_profile();

  // only the 2 sigma^4 / tau^2 term survives at r_d = r_delta = 0
  CHECK(lambda_star_prime(p, rates_with(0, 0), 1.0, 0.0) == doctest::Approx(2.0));

  // direct evaluation: 2 (sqrt(2) * 0.2 + 0.02 + 2)
  double v = lambda_star_prime(p, rates_with(0.1, 0.1), 1.0, 0.5);
  CHECK(v == doctest::Approx(2.0 * (std::sqrt(2.0) * 0.2 + 0.02 + 2.0))
                 .epsilon(1e-12));
  CHECK(v == doctest::Approx(4.6057).epsilon(1e-4));

  // doubling tau_x with no deviation terms quarters the value
  CHECK(lambda_star_prime(p, rates_with(0, 0), 2.0, 0.0) == doctest::Approx(0.5));
}

TEST_CASE("default_config follows the closed-form threshold") {
  EstimatorConfig cfg = default_config(unit_profile(), 10000, 100, 5, 0, 0.1);
  const double expected_tau =
      std::pow((std::log(100.0) + std::log(10.0)) / 1e4, -0.25);
  CHECK(cfg.tau_x == doctest::Approx(expected_tau).epsilon(1e-12));
  CHECK(cfg.tau_x == doctest::Approx(6.17).epsilon(1e-2));
  CHECK(cfg.epsilon == doctest::Approx(1e-4));  // o = 0 -> 1/n
  CHECK(cfg.lambda_star == cfg.lambda_star_prime);
  CHECK(cfg.tau_suc / cfg.tau_suc_prime == doctest::Approx(cfg.c_suc));
  CHECK(cfg.mode == "theorem");
  cfg.validate();
}

TEST_CASE("default_config rejects singular profiles") {
  MomentProfile p = unit_profile();
  p.lambda_Sigma = 0.0;
  p.singular_gram = true;
  CHECK_THROWS_WITH_AS(default_config(p, 1000, 10, 2, 0, 0.1),
                       doctest::Contains("lambda_Sigma"),
                       std::invalid_argument);
}

TEST_CASE("theorem side conditions all hold for astronomically large n") {
  MomentProfile p = unit_profile();
  bool reached = false;
  for (double n : {1e4, 1e8, 1e12, 1e16, 1e20}) {
    EstimatorConfig cfg =
        default_config(p, static_cast<long>(n), 50, 2, 0, 0.1, 1.0);
    if (cfg.flags.all()) {
      reached = true;
      break;
    }
  }
  CHECK(reached);

  // and at desk scale the radius flag reports the violation
  EstimatorConfig small = default_config(p, 2000, 50, 5, 0, 0.1, 1.0);
  CHECK_FALSE(small.flags.radius_le_one);
  CHECK(small.r > 1.0);
}

TEST_CASE("lambda_s lower bound is monotone in o and epsilon") {
  MomentProfile p = unit_profile();
  double prev = -1;
  for (long o : {0l, 10l, 40l, 100l, 400l}) {
    EstimatorConfig cfg = default_config(p, 1000, 20, 4, o, 0.1);
    CHECK(cfg.lambda_s >= prev);
    prev = cfg.lambda_s;
  }
}

TEST_CASE("epsilon never reaches 1/2 without a flag") {
  MomentProfile p = unit_profile();
  EstimatorConfig near_half = default_config(p, 1000, 20, 4, 499, 0.1);
  CHECK(near_half.epsilon < 0.5);
  CHECK(near_half.flags.epsilon_lt_half);
  EstimatorConfig over = default_config(p, 1000, 20, 4, 600, 0.1);
  CHECK_FALSE(over.flags.epsilon_lt_half);
}

TEST_CASE("bench profile shares the scale-invariant stages") {
  MomentProfile p = unit_profile();
  EstimatorConfig bench = bench_config(p, 2000, 100, 5, 100, 0.1);
  EstimatorConfig theorem = default_config(p, 2000, 100, 5, 100, 0.1);
  CHECK(bench.tau_x == theorem.tau_x);
  CHECK(bench.epsilon == theorem.epsilon);
  CHECK(bench.lambda_star == theorem.lambda_star);
  CHECK(bench.r == 1.0);
  CHECK(bench.lambda_s < theorem.lambda_s);
  CHECK(bench.mode == "bench");
  bench.validate();
}

TEST_SUITE_END();
