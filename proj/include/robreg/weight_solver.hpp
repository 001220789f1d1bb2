#pragma once

#include <cstdint>
#include <optional>

#include "robreg/projections.hpp"
#include "robreg/pruning.hpp"
#include "robreg/types.hpp"

namespace robreg {

struct SolverControls {
  int max_outer_iters = 500;
  int max_inner_iters = 300;
  // Absolute duality-gap target. Negative selects the default
  // 1e-4 * max(1, tau_suc) at the outer level and a scale-aware default
  // for standalone inner solves.
  double gap_tolerance = -1.0;
  std::uint64_t seed = 0;  // reserved; the solver itself is deterministic
  // Stop the outer descent once the attained value certifies success
  // (value <= tau_suc). The paper's algorithm only consumes the success
  // test, so further minimization buys nothing downstream; disable to get
  // a full minimization (used by optimality tests).
  bool early_success_exit = true;
};

// Result of maximizing <S, M> - lambda_star ||M||_1 over the spectrahedron.
struct InnerMaxResult {
  double value = 0;  // objective at M; >= 0 since M = 0 is feasible
  SpectrahedronPoint M;
  double certified_bound = 0;  // best dual upper bound found
  Mat U;                       // feasible dual matrix achieving the bound
  int iterations = 0;
  bool converged = false;  // certified_bound - value <= tolerance
};

// Solves the inner maximization by ADMM splitting of the l1 term from the
// spectrahedron constraint; every iterate is feasible, so `value` is a
// certified lower bound and `certified_bound` a certified upper bound on
// the optimum. Rejects non-symmetric S. `warm` reuses a previous solve's
// state when S changed only slightly.
InnerMaxResult inner_max(const Mat& S, double lambda_star, double trace_budget,
                         const SolverControls& ctrl,
                         const InnerMaxResult* warm = nullptr);

// Weak-duality bound: for any U with ||U||_inf <= lambda_star,
//   sup_{M in spectrahedron} <S, M> - lambda_star ||M||_1
//     <= trace_budget * max(lambda_max(S - U), 0).
// Infeasible U is rejected.
double dual_certificate_bound(const Mat& S, const Mat& U, double lambda_star,
                              double trace_budget);

struct WeightSolution {
  TruncatedSimplexPoint w_hat;
  double value = 0;  // attained saddle objective at w_hat
  bool success = false;  // value <= tau_suc
  std::optional<Mat> certificate_U;  // dual matrix for the final inner solve
  double certificate_bound = 0;      // induced upper bound on the inner value
  int iterations = 0;       // outer iterations taken
  bool converged = false;   // outer duality gap <= tolerance
  bool inner_converged = true;  // all inner solves certified their gap
  double lower_bound = 0;   // best certified lower bound on the saddle value
  double uniform_value = 0; // objective at the uniform weights (diagnostic)
};

// Minimizes over the truncated simplex the penalized spectrahedron maximum
//   F(w) = max_M ( sum_i w_i <x_i x_i^T, M> - lambda_star ||M||_1 )
// by projected subgradient descent with averaging; F is a pointwise max of
// linear functions of w, hence convex. Success means the attained value
// passes the tau_suc test.
WeightSolution compute_weight(const PrunedMatrix& pruned, double lambda_star,
                              double tau_suc, double epsilon,
                              double trace_budget, const SolverControls& ctrl);

}  // namespace robreg
