#include "robreg/projections.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace robreg {

double TruncatedSimplexPoint::cap() const {
  return 1.0 / (static_cast<double>(n()) * (1.0 - epsilon));
}

void TruncatedSimplexPoint::validate() const {
  if (n() < 1) throw std::invalid_argument("TruncatedSimplexPoint: empty");
  if (!(epsilon >= 0.0 && epsilon < 1.0))
    throw std::invalid_argument("TruncatedSimplexPoint: epsilon outside [0, 1)");
  const double c = cap();
  if (std::fabs(w.sum() - 1.0) > 1e-9)
    throw std::invalid_argument("TruncatedSimplexPoint: weights do not sum to 1");
  if ((w.array() < -0.0).any() || (w.array() > c + 1e-12).any())
    throw std::invalid_argument("TruncatedSimplexPoint: entry outside [0, cap]");
}

void SpectrahedronPoint::validate() const {
  const long d = M.rows();
  if (d < 1 || M.cols() != d)
    throw std::invalid_argument("SpectrahedronPoint: M must be square");
  if (!(trace_budget > 0))
    throw std::invalid_argument("SpectrahedronPoint: trace budget must be > 0");
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw std::invalid_argument("SpectrahedronPoint: M not symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> eig(0.5 * (M + M.transpose()),
                                         Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-9 * std::max(1.0, scale))
    throw std::invalid_argument("SpectrahedronPoint: negative eigenvalue");
  if (M.trace() > trace_budget + 1e-9 * std::max(1.0, trace_budget))
    throw std::invalid_argument("SpectrahedronPoint: trace exceeds budget");
}

namespace {

double capped_sum(const Vec& v, double theta, double cap) {
  double s = 0;
  for (long i = 0; i < v.size(); ++i) {
    double x = v[i] - theta;
    if (x > cap) x = cap;
    if (x < 0) x = 0;
    s += x;
  }
  return s;
}

}  // namespace

Vec project_capped_simplex(const Vec& v, double mass, double cap) {
  const long n = v.size();
  if (n < 1) throw std::invalid_argument("project_capped_simplex: empty input");
  if (!(mass > 0)) throw std::invalid_argument("project_capped_simplex: mass must be > 0");
  if (!(static_cast<double>(n) * cap >= mass * (1.0 - 1e-12)))
    throw std::invalid_argument("project_capped_simplex: box cannot reach mass");
  if (!v.allFinite())
    throw std::invalid_argument("project_capped_simplex: non-finite input");

  const bool capped = std::isfinite(cap);
  // g(theta) = sum clamp(v - theta, 0, cap) is continuous and nonincreasing;
  // bracket the crossing g(theta) = mass and bisect.
  double lo = v.minCoeff() - (capped ? cap : mass) - 1.0;
  double hi = v.maxCoeff();
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::fabs(hi));
       ++it) {
    double mid = 0.5 * (lo + hi);
    if (capped_sum(v, mid, cap) >= mass)
      lo = mid;
    else
      hi = mid;
  }
  double theta = 0.5 * (lo + hi);

  // Active-set refinement: with the free set fixed, theta solves the sum
  // constraint exactly. Iterate until the classification is stable.
  const double tol = 1e-12 * std::max(1.0, v.cwiseAbs().maxCoeff());
  for (int pass = 0; pass < 8; ++pass) {
    double free_sum = 0;
    long free_count = 0, capped_count = 0;
    for (long i = 0; i < n; ++i) {
      double x = v[i] - theta;
      if (capped && x >= cap - tol) {
        ++capped_count;
      } else if (x > tol) {
        free_sum += v[i];
        ++free_count;
      }
    }
    if (free_count == 0) break;  // plateau; bisected theta is already exact
    double refined =
        (free_sum + (capped ? capped_count * cap : 0.0) - mass) / free_count;
    if (std::fabs(refined - theta) <= 1e-15 * std::max(1.0, std::fabs(theta)))
      break;
    theta = refined;
  }

  Vec x(n);
  for (long i = 0; i < n; ++i) {
    double xi = v[i] - theta;
    if (capped && xi > cap) xi = cap;
    if (xi < 0) xi = 0;
    x[i] = xi;
  }
  if (std::fabs(x.sum() - mass) > 1e-9 * std::max(1.0, mass))
    throw std::runtime_error("project_capped_simplex: projection did not close");
  return x;
}

TruncatedSimplexPoint project_truncated_simplex(const Vec& v, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon < 1.0))
    throw std::invalid_argument("project_truncated_simplex: epsilon outside [0, 1)");
  const long n = v.size();
  if (n < 1) throw std::invalid_argument("project_truncated_simplex: empty input");
  const double cap = 1.0 / (static_cast<double>(n) * (1.0 - epsilon));
  // n * cap = 1/(1-eps) >= 1, so the box always reaches the simplex.
  TruncatedSimplexPoint out;
  out.epsilon = epsilon;
  out.w = project_capped_simplex(v, 1.0, cap);
  return out;
}

SpectrahedronPoint project_spectrahedron(const Mat& A, double trace_budget) {
  const long d = A.rows();
  if (d < 1 || A.cols() != d)
    throw std::invalid_argument("project_spectrahedron: A must be square");
  if (!(trace_budget > 0))
    throw std::invalid_argument("project_spectrahedron: trace budget must be > 0");
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw std::invalid_argument("project_spectrahedron: A not symmetric");

  Eigen::SelfAdjointEigenSolver<Mat> eig;
  if (d <= 3)
    eig.computeDirect(A);
  else
    eig.compute(A);
  if (eig.info() != Eigen::Success)
    throw std::runtime_error(
        "project_spectrahedron: eigendecomposition failed (max |A_ij| = " +
        std::to_string(scale) + ")");

  Vec lam = eig.eigenvalues();
  Vec proj;
  double positive_sum = lam.array().max(0.0).sum();
  if (positive_sum <= trace_budget) {
    proj = lam.array().max(0.0);
  } else {
    proj = project_capped_simplex(lam, trace_budget,
                                  std::numeric_limits<double>::infinity());
  }

  SpectrahedronPoint out;
  out.trace_budget = trace_budget;
  out.M = eig.eigenvectors() * proj.asDiagonal() * eig.eigenvectors().transpose();
  out.M = 0.5 * (out.M + out.M.transpose());  // kill rounding asymmetry
  return out;
}

}  // namespace robreg
