#include "robreg/pipeline.hpp"

#include <chrono>

namespace robreg {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

EstimationResult estimate(const RegressionInstance& instance,
                          const EstimatorConfig& config,
                          const PipelineControls& ctrl) {
  instance.validate();
  config.validate();

  EstimationResult res;
  res.config = config;
  const auto t_start = Clock::now();

  auto t0 = Clock::now();
  PrunedMatrix pruned = prune_matrix(instance.X, config.tau_x);
  res.timings.prune_seconds = seconds_since(t0);

  t0 = Clock::now();
  res.weight_solution =
      compute_weight(pruned, config.lambda_star, config.tau_suc,
                     config.epsilon, config.trace_budget(), ctrl.weight);
  res.timings.weight_seconds = seconds_since(t0);
  res.failed = !res.weight_solution.success;

  t0 = Clock::now();
  res.rounded = round_weights(res.weight_solution.w_hat);
  res.timings.rounding_seconds = seconds_since(t0);

  t0 = Clock::now();
  HuberObjective obj;
  obj.lambda_o = config.lambda_o;
  obj.lambda_s = config.lambda_s;
  obj.weights = res.rounded;
  obj.y = instance.y;
  obj.X = pruned.X_tilde;
  auto [beta, diag] = huber_solve(obj, ctrl.huber);
  res.beta_hat = std::move(beta);
  res.huber = diag;
  res.timings.huber_seconds = seconds_since(t0);

  if (instance.truth)
    res.l2_error = (res.beta_hat - instance.truth->beta_star).norm();
  res.timings.total_seconds = seconds_since(t_start);
  return res;
}

}  // namespace robreg
