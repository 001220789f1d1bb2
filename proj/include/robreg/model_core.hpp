#pragma once

#include "robreg/types.hpp"

namespace robreg {

// Evaluates the rate quantities for a problem of size (n, d) with o outliers
// at confidence level delta. tau_x enters only the clipped rates r_xd,
// r_xdelta; tau_x = 0 gives their no-clipping limit.
// Rejects n < 1, d < 3, o outside [0, n], delta outside (0, 1), tau_x < 0.
Rates compute_rates(long n, long d, long o, double delta, double tau_x,
                    double sigma_x2);

// Plug-in moment profile from a (pruned) design matrix: per-coordinate
// moment maxima, Gram spectrum, and a sampled directional kurtosis maximum
// (coordinate directions plus 100 random unit vectors; diagnostics only).
// sigma_noise defaults to 1. A singular Gram is flagged with
// lambda_Sigma = 0; an all-zero design is rejected outright.
MomentProfile estimate_moment_profile(const Mat& X);

}  // namespace robreg
