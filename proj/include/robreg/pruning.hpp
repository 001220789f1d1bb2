#pragma once

#include "robreg/types.hpp"

namespace robreg {

// Covariates after elementwise clipping to [-tau_x, tau_x].
struct PrunedMatrix {
  Mat X_tilde;
  double tau_x = 0;

  // Every entry within the box, clipping threshold positive.
  void validate() const;
};

// Symmetric clip: x itself when |x| <= tau, otherwise sgn(x) * tau.
// Rejects non-finite x; requires tau > 0.
double clip_value(double x, double tau);

// Applies clip_value entrywise. Idempotent. Non-finite entries are rejected
// with their (row, col) location.
PrunedMatrix prune_matrix(const Mat& X, double tau_x);

}  // namespace robreg
