#pragma once

#include "robreg/rounding.hpp"
#include "robreg/types.hpp"

namespace robreg {

// Huber loss: t^2/2 on |t| <= 1, |t| - 1/2 outside. Convex, even,
// H(t) <= t^2/2 and H(t) <= |t|.
double huber_value(double t);

// Derivative of huber_value: t on |t| <= 1, sgn(t) outside; |h| <= 1.
double huber_deriv(double t);

// The weighted l1-penalized Huber program
//   sum_i lambda_o^2 H( n w'_i (y_i - x_i^T beta) / (lambda_o sqrt(n)) )
//     + lambda_s ||beta||_1
// over beta, with rounded weights w' in {0, 1/n}. Samples with w'_i = 0
// contribute exactly nothing.
struct HuberObjective {
  double lambda_o = 1;  // Huber scale, > 0
  double lambda_s = 0;  // l1 penalty, >= 0
  RoundedWeights weights;
  Vec y;
  Mat X;

  void validate() const;
};

double objective_value(const Vec& beta, const HuberObjective& obj);

// Gradient of the smooth part (everything except lambda_s ||beta||_1).
Vec smooth_gradient(const Vec& beta, const HuberObjective& obj);

struct HuberControls {
  int max_iters = 5000;
  double tolerance = 1e-8;  // on the coordinatewise stationarity residual
};

struct HuberDiagnostics {
  int iterations = 0;
  double stationarity = 0;  // max_j dist(-grad_j, subdiff of lambda_s |.|)
  double objective = 0;
  bool converged = false;
};

// Accelerated proximal gradient (soft-threshold prox) with monotone restart
// and backtracking from a power-iteration Lipschitz estimate.
std::pair<Vec, HuberDiagnostics> huber_solve(const HuberObjective& obj,
                                             const HuberControls& ctrl);

}  // namespace robreg
