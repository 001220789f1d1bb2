#pragma once

#include "robreg/projections.hpp"
#include "robreg/types.hpp"

namespace robreg {

// Weights discretized to {0, 1/n}. At most 2*epsilon*n entries round to
// zero for any point of the truncated simplex.
struct RoundedWeights {
  Vec w_prime;
  int zeroed_count = 0;

  int n() const { return static_cast<int>(w_prime.size()); }
  static RoundedWeights uniform(int n);
  void validate() const;
};

// w'_i = 1/n when w_i >= 1/(2n) (the boundary is retained), else 0.
// Rounded weights are not renormalized. Rejects inputs violating the
// truncated-simplex invariants.
RoundedWeights round_weights(const TruncatedSimplexPoint& w);

// Same discretization at an arbitrary threshold. Exists so fault-injection
// tests can corrupt the threshold; production code uses round_weights.
RoundedWeights round_weights_with_threshold(const TruncatedSimplexPoint& w,
                                            double threshold);

}  // namespace robreg
