#pragma once

#include "robreg/types.hpp"

namespace robreg {

// A point of the truncated probability simplex: w >= 0, sum w = 1,
// w_i <= 1/(n(1-epsilon)).
struct TruncatedSimplexPoint {
  Vec w;
  double epsilon = 0;

  int n() const { return static_cast<int>(w.size()); }
  double cap() const;  // 1/(n(1-epsilon))
  // Sum within 1e-9 of 1, entries within [0, cap + 1e-12].
  void validate() const;
};

// A point of the spectrahedron: symmetric PSD with Tr <= trace_budget (r^2).
struct SpectrahedronPoint {
  Mat M;
  double trace_budget = 0;

  // Symmetry within 1e-9, eigenvalues >= -1e-9, trace <= budget + 1e-9.
  void validate() const;
};

// Euclidean projection onto {x : 0 <= x_i <= cap, sum x = mass}.
// Requires n * cap >= mass. Exact up to floating point via dual bisection
// plus an active-set refinement.
Vec project_capped_simplex(const Vec& v, double mass, double cap);

// Euclidean projection onto the truncated simplex. epsilon in [0, 1);
// the Theorem-2 range [1/n, 1/2) is enforced by tuning, not here, so that
// tests may use the epsilon = 0 limit.
TruncatedSimplexPoint project_truncated_simplex(const Vec& v, double epsilon);

// Frobenius-nearest PSD matrix with Tr <= trace_budget, computed by
// eigendecomposition and projection of the spectrum onto
// {lambda >= 0, sum lambda <= trace_budget}.
SpectrahedronPoint project_spectrahedron(const Mat& A, double trace_budget);

}  // namespace robreg
