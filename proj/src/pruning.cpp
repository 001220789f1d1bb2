#include "robreg/pruning.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace robreg {

void PrunedMatrix::validate() const {
  if (!(tau_x > 0)) throw std::invalid_argument("PrunedMatrix: tau_x must be > 0");
  if ((X_tilde.array().abs() > tau_x).any())
    throw std::invalid_argument("PrunedMatrix: entry outside [-tau_x, tau_x]");
}

double clip_value(double x, double tau) {
  if (!(tau > 0)) throw std::invalid_argument("clip_value: tau must be > 0");
  if (!std::isfinite(x)) throw std::invalid_argument("clip_value: non-finite input");
  if (x > tau) return tau;
  if (x < -tau) return -tau;
  return x;
}

PrunedMatrix prune_matrix(const Mat& X, double tau_x) {
  if (!(tau_x > 0)) throw std::invalid_argument("prune_matrix: tau_x must be > 0");
  PrunedMatrix out;
  out.tau_x = tau_x;
  out.X_tilde = X;
  for (long i = 0; i < X.rows(); ++i) {
    for (long j = 0; j < X.cols(); ++j) {
      const double v = X(i, j);
      if (!std::isfinite(v)) {
        throw std::invalid_argument("prune_matrix: non-finite entry at (" +
                                    std::to_string(i) + ", " +
                                    std::to_string(j) + ")");
      }
      out.X_tilde(i, j) = v > tau_x ? tau_x : (v < -tau_x ? -tau_x : v);
    }
  }
  return out;
}

}  // namespace robreg
