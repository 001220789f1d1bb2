#include <Eigen/Dense>
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "robreg/bench.hpp"
#include "robreg/datagen.hpp"
#include "robreg/pipeline.hpp"
#include "robreg/rng.hpp"
#include "robreg/stats.hpp"

using namespace robreg;

namespace {

GeneratedInstance clean_instance(long n, long d, long s, std::uint64_t seed) {
  GeneratorSpec spec;
  spec.n = n;
  spec.d = d;
  spec.s = s;
  spec.seed = seed;
  return generate(spec);
}

EstimatorConfig bench_cfg_for(const GeneratorSpec& spec) {
  return bench_config(true_moment_profile(spec), spec.n, spec.d, spec.s,
                      spec.o, 0.1);
}

}  // namespace

TEST_SUITE_BEGIN("solvers");

TEST_CASE("noiseless well-posed problems are recovered to 1e-3") {
  GeneratorSpec spec;
  spec.n = 400;
  spec.d = 8;
  spec.s = 3;
  spec.seed = 21;
  GeneratedInstance g = generate(spec);
  // strip the noise: y = X beta* exactly
  g.instance.y = g.instance.X * g.instance.truth->beta_star;

  EstimatorConfig cfg = bench_cfg_for(spec);
  cfg.tau_x = 1e6;  // no clipping
  cfg.lambda_s = 1e-9;
  EstimationResult res = estimate(g.instance, cfg);
  CHECK(*res.l2_error <= 1e-3);

  // least-squares oracle agrees
  Vec ols = (g.instance.X.transpose() * g.instance.X)
                .ldlt()
                .solve(g.instance.X.transpose() * g.instance.y);
  CHECK((res.beta_hat - ols).norm() <= 2e-3);
}

TEST_CASE("clean instance beats the plain-lasso baseline within slack") {
  GeneratorSpec spec;
  spec.n = 2000;
  spec.d = 50;
  spec.s = 5;
  spec.seed = 4;
  GeneratedInstance g = generate(spec);
  EstimationResult robust = estimate(g.instance, bench_cfg_for(spec));
  Vec lasso = fit_lasso_baseline(g.instance);
  double lasso_err = (lasso - g.instance.truth->beta_star).norm();
  CHECK(*robust.l2_error <= lasso_err * 1.10);
}

TEST_CASE("with o = 0 the pipeline equals direct huber on uniform weights") {
  GeneratorSpec spec;
  spec.n = 200;
  spec.d = 6;
  spec.s = 2;
  spec.seed = 8;
  GeneratedInstance g = generate(spec);
  EstimatorConfig cfg = bench_cfg_for(spec);
  EstimationResult res = estimate(g.instance, cfg);
  REQUIRE_FALSE(res.failed);
  REQUIRE(res.rounded.zeroed_count == 0);  // uniform weights survive rounding

  HuberObjective obj;
  obj.lambda_o = cfg.lambda_o;
  obj.lambda_s = cfg.lambda_s;
  obj.weights = RoundedWeights::uniform(static_cast<int>(spec.n));
  obj.y = g.instance.y;
  obj.X = prune_matrix(g.instance.X, cfg.tau_x).X_tilde;
  auto [direct, diag] = huber_solve(obj, HuberControls{});
  (void)diag;
  CHECK(res.beta_hat == direct);  // same inputs, same deterministic path
}

TEST_CASE("determinism: identical runs give identical estimates") {
  GeneratorSpec spec;
  spec.n = 300;
  spec.d = 10;
  spec.s = 3;
  spec.contamination = Contamination::kLeverage;
  spec.o = 15;
  spec.magnitude = 100;
  spec.seed = 12;
  GeneratedInstance g = generate(spec);
  EstimatorConfig cfg = bench_cfg_for(spec);
  EstimationResult a = estimate(g.instance, cfg);
  EstimationResult b = estimate(g.instance, cfg);
  CHECK(a.beta_hat == b.beta_hat);
  CHECK(a.weight_solution.w_hat.w == b.weight_solution.w_hat.w);
  CHECK(a.weight_solution.value == b.weight_solution.value);
}

TEST_CASE("permutation equivariance of the estimate") {
  GeneratorSpec spec;
  spec.n = 150;
  spec.d = 8;
  spec.s = 3;
  spec.contamination = Contamination::kOblivious;
  spec.o = 10;
  spec.magnitude = 50;
  spec.seed = 31;
  GeneratedInstance g = generate(spec);
  EstimatorConfig cfg = bench_cfg_for(spec);
  EstimationResult base = estimate(g.instance, cfg);

  // deterministic shuffle
  RngStream rng(1234, 0);
  std::vector<int> perm(spec.n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = static_cast<int>(spec.n) - 1; i > 0; --i) {
    int j = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(i + 1));
    std::swap(perm[i], perm[j]);
  }
  RegressionInstance shuffled = g.instance;
  shuffled.truth.reset();
  for (int i = 0; i < spec.n; ++i) {
    shuffled.X.row(i) = g.instance.X.row(perm[i]);
    shuffled.y[i] = g.instance.y[perm[i]];
  }
  EstimationResult permuted = estimate(shuffled, cfg);
  CHECK((permuted.beta_hat - base.beta_hat).norm() <= 1e-8);
  // weights follow the permutation
  double max_diff = 0;
  for (int i = 0; i < spec.n; ++i)
    max_diff = std::max(max_diff,
                        std::fabs(permuted.weight_solution.w_hat.w[i] -
                                  base.weight_solution.w_hat.w[perm[i]]));
  CHECK(max_diff <= 1e-6);
}

TEST_SUITE_END();

TEST_SUITE_BEGIN("montecarlo");

TEST_CASE("median error is nonincreasing in n (isotonic residual)") {
  const std::vector<long> ns = {250, 500, 1000, 2000};
  const int reps = 50;
  std::vector<double> medians;
  for (long n : ns) {
    std::vector<double> errs;
    for (int r = 0; r < reps; ++r) {
      GeneratorSpec spec;
      spec.n = n;
      spec.d = 20;
      spec.s = 3;
      spec.seed = derive_seed(2718, static_cast<std::uint64_t>(n),
                              static_cast<std::uint64_t>(r));
      GeneratedInstance g = generate(spec);
      EstimationResult res = estimate(g.instance, bench_cfg_for(spec));
      errs.push_back(*res.l2_error);
    }
    medians.push_back(median(errs));
  }
  std::vector<double> fit = isotonic_decreasing_fit(medians);
  double num = 0, den = 0;
  for (size_t i = 0; i < medians.size(); ++i) {
    num += (medians[i] - fit[i]) * (medians[i] - fit[i]);
    den += medians[i] * medians[i];
  }
  CHECK(std::sqrt(num / den) <= 0.10);
}

TEST_SUITE_END();
