#pragma once

#include <optional>

#include "robreg/huber.hpp"
#include "robreg/pruning.hpp"
#include "robreg/rounding.hpp"
#include "robreg/tuning.hpp"
#include "robreg/types.hpp"
#include "robreg/weight_solver.hpp"

namespace robreg {

struct PipelineControls {
  SolverControls weight;
  HuberControls huber;
};

struct StageTimings {
  double prune_seconds = 0;
  double weight_seconds = 0;
  double rounding_seconds = 0;
  double huber_seconds = 0;
  double total_seconds = 0;
};

struct EstimationResult {
  Vec beta_hat;
  WeightSolution weight_solution;
  RoundedWeights rounded;
  EstimatorConfig config;
  std::optional<double> l2_error;  // ||beta_hat - beta*||_2 when truth known
  StageTimings timings;
  HuberDiagnostics huber;
  // Weight stage did not certify success. The estimate is still produced
  // from the best-found weights so benchmark grids never lose data points;
  // callers must treat it as flagged.
  bool failed = false;
};

// Runs the four stages in order: prune covariates, solve for weights,
// round them, and fit the weighted penalized Huber regression. beta_hat is
// reported on the original covariate scale; pruning is internal to
// estimation.
EstimationResult estimate(const RegressionInstance& instance,
                          const EstimatorConfig& config,
                          const PipelineControls& ctrl = {});

}  // namespace robreg
