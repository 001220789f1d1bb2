#include "robreg/types.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace robreg {

namespace {

void check(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

void RegressionInstance::validate() const {
  check(n >= 1, "RegressionInstance: n must be >= 1");
  check(d >= 3, "RegressionInstance: d must be >= 3");
  check(y.size() == n, "RegressionInstance: y length != n");
  check(X.rows() == n && X.cols() == d, "RegressionInstance: X must be n x d");
  if (!truth) return;

  const InstanceTruth& t = *truth;
  check(t.beta_star.size() == d, "RegressionInstance: beta_star length != d");
  check(static_cast<int>(t.support.size()) <= d,
        "RegressionInstance: |support| > d");

  std::vector<char> mark(static_cast<size_t>(n), 0);
  for (int i : t.outlier_set) {
    check(i >= 0 && i < n, "RegressionInstance: outlier index out of range");
    check(!mark[i], "RegressionInstance: duplicate outlier index");
    mark[i] = 1;
  }
  for (int i : t.inlier_set) {
    check(i >= 0 && i < n, "RegressionInstance: inlier index out of range");
    check(!mark[i], "RegressionInstance: inlier/outlier sets overlap");
    mark[i] = 2;
  }
  check(t.outlier_set.size() + t.inlier_set.size() == static_cast<size_t>(n),
        "RegressionInstance: inlier and outlier sets must partition {0..n-1}");

  std::vector<char> on_support(static_cast<size_t>(d), 0);
  for (int j : t.support) {
    check(j >= 0 && j < d, "RegressionInstance: support index out of range");
    on_support[j] = 1;
  }
  for (int j = 0; j < d; ++j) {
    if (!on_support[j]) {
      check(t.beta_star[j] == 0.0,
            "RegressionInstance: beta_star nonzero off support");
    }
  }
}

void MomentProfile::validate() const {
  check(sigma_x2 > 0, "MomentProfile: sigma_x2 must be > 0");
  check(sigma_x4 > 0, "MomentProfile: sigma_x4 must be > 0");
  check(sigma_x8 > 0, "MomentProfile: sigma_x8 must be > 0");
  check(kurtosis_K >= 1, "MomentProfile: kurtosis_K must be >= 1");
  check(sigma_noise > 0, "MomentProfile: sigma_noise must be > 0");
  check(sigma_op > 0, "MomentProfile: sigma_op must be > 0");
  if (singular_gram) {
    check(lambda_Sigma == 0, "MomentProfile: singular_gram implies lambda_Sigma = 0");
  } else {
    check(lambda_Sigma > 0, "MomentProfile: lambda_Sigma must be > 0");
  }
  check(lambda_Sigma <= sigma_op + 1e-12,
        "MomentProfile: lambda_Sigma must be <= sigma_op");
  for (double v : {sigma_x2, sigma_x4, sigma_x8, kurtosis_K, sigma_noise,
                   sigma_op, lambda_Sigma}) {
    check(std::isfinite(v), "MomentProfile: non-finite field");
  }
}

}  // namespace robreg
