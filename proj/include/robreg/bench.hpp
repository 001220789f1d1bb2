#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "robreg/io.hpp"
#include "robreg/pipeline.hpp"
#include "robreg/types.hpp"

namespace robreg {

// One benchmark replicate. Synthetic-only, so the error is always
// truth-based.
struct ReplicateRow {
  std::uint64_t seed = 0;
  long n = 0, d = 0, s = 0, o = 0;
  std::string estimator;  // robust | lasso | huber_lasso_unweighted
  std::string law;        // covariate law of the cell
  double l2_error = 0;
  bool success_flag = false;
  double wall_time = 0;  // seconds; excluded from determinism guarantees
};

struct ExperimentReport {
  std::vector<ReplicateRow> rows;
  ConfigDoc summary;

  std::string rows_csv() const;
  static std::vector<ReplicateRow> parse_rows_csv(const std::string& text);
};

// Fits the estimator named by `estimator` on one instance using the bench
// tuning profile derived from the oracle moment profile of `gen`.
ReplicateRow run_one(const GeneratorSpec& gen, const std::string& estimator,
                     std::uint64_t seed);

// Plain Lasso baseline: raw covariates, uniform weights, Huber scale pushed
// far into the quadratic branch, l1 level 2 sigma_hat (r_d + r_delta) with
// sigma_hat the MAD estimate of the response spread.
Vec fit_lasso_baseline(const RegressionInstance& instance, double delta = 0.1);

// suite in {n_scaling, o_scaling, breakdown, baselines}
ExperimentReport run_suite(const std::string& suite, std::uint64_t seed,
                           int threads);

// Runs every module's invariant suite; returns the number of failures and
// appends one line per check to `lines`. corrupt_rounding injects a wrong
// rounding threshold so the discretization invariant must fail (test hook).
int run_verification(std::vector<std::string>& lines, bool corrupt_rounding);

}  // namespace robreg
