#pragma once

#include <Eigen/Core>

#include <optional>
#include <vector>

namespace robreg {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Ground truth attached to synthetic instances. Indices are 0-based.
struct InstanceTruth {
  Vec beta_star;
  std::vector<int> support;      // nonzero coordinates of beta_star, sorted
  std::vector<int> outlier_set;  // adversary-owned sample indices, sorted
  std::vector<int> inlier_set;   // complement, sorted
};

// Observed regression data (y, X), possibly contaminated.
struct RegressionInstance {
  int n = 0;
  int d = 0;
  Vec y;  // length n
  Mat X;  // n x d
  std::optional<InstanceTruth> truth;

  // Throws std::invalid_argument when a structural invariant fails:
  // shape mismatches, d < 3, or an inconsistent truth block.
  void validate() const;

  int num_outliers() const {
    return truth ? static_cast<int>(truth->outlier_set.size()) : 0;
  }
  int sparsity() const {
    return truth ? static_cast<int>(truth->support.size()) : 0;
  }
};

// Moment and spectrum constants of the covariate/noise laws. Either supplied
// analytically (synthetic experiments) or estimated from data; estimated
// profiles are flagged because the theory assumes population quantities.
struct MomentProfile {
  double sigma_x2 = 0;      // max_j (E x_j^2)^{1/2}
  double sigma_x4 = 0;      // max_j (E x_j^4)^{1/4}
  double sigma_x8 = 0;      // cross 8th-moment constant, (E(x_{j1}..x_{j4})^2)^{1/8}
  double kurtosis_K = 0;    // directional L4-L2 constant, >= 1
  double sigma_noise = 0;   // bound on E|xi|
  double sigma_op = 0;      // operator norm of Sigma^{1/2}
  double lambda_Sigma = 0;  // minimum singular value of Sigma^{1/2}

  bool estimated = false;      // plug-in from data rather than oracle values
  bool singular_gram = false;  // lambda_Sigma reported as 0; tuning refuses it

  // All fields strictly positive (lambda_Sigma may be 0 only when
  // singular_gram), lambda_Sigma <= sigma_op, kurtosis_K >= 1.
  void validate() const;
};

// The deviation rates of the analysis, all with natural logarithms.
struct Rates {
  double r_o = 0;       // sqrt(o/n)
  double r_d = 0;       // sqrt(log d / n)
  double r_delta = 0;   // sqrt(log(1/delta) / n)
  double r_xd = 0;      // (sigma_x2 + 1) r_d + tau_x r_d^2
  double r_xdelta = 0;  // (sigma_x2 + 1) r_delta + tau_x r_delta^2
  double r_ddelta = 0;  // r_xd + r_xdelta
};

}  // namespace robreg
