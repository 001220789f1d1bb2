#include "robreg/weight_solver.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace robreg {

namespace {

void check_square_symmetric(const Mat& S, const char* who) {
  if (S.rows() < 1 || S.cols() != S.rows())
    throw std::invalid_argument(std::string(who) + ": matrix must be square");
  const double scale = std::max(1.0, S.cwiseAbs().maxCoeff());
  if ((S - S.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw std::invalid_argument(std::string(who) + ": matrix must be symmetric");
}

double max_eigenvalue(const Mat& A) {
  Eigen::SelfAdjointEigenSolver<Mat> eig;
  if (A.rows() <= 3)
    eig.computeDirect(A, Eigen::EigenvaluesOnly);
  else
    eig.compute(A, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().maxCoeff();
}

Mat soft_threshold(const Mat& A, double k) {
  return A.unaryExpr([k](double v) {
    if (v > k) return v - k;
    if (v < -k) return v + k;
    return 0.0;
  });
}

Mat clip_entries(const Mat& A, double k) {
  return A.unaryExpr([k](double v) { return std::clamp(v, -k, k); });
}

}  // namespace

double dual_certificate_bound(const Mat& S, const Mat& U, double lambda_star,
                              double trace_budget) {
  check_square_symmetric(S, "dual_certificate_bound");
  check_square_symmetric(U, "dual_certificate_bound");
  if (U.rows() != S.rows())
    throw std::invalid_argument("dual_certificate_bound: dimension mismatch");
  if (!(trace_budget > 0))
    throw std::invalid_argument("dual_certificate_bound: trace budget must be > 0");
  if (U.cwiseAbs().maxCoeff() > lambda_star + 1e-12 * std::max(1.0, lambda_star))
    throw std::invalid_argument(
        "dual_certificate_bound: ||U||_inf exceeds lambda_star");
  return trace_budget * std::max(max_eigenvalue(S - U), 0.0);
}

InnerMaxResult inner_max(const Mat& S, double lambda_star, double trace_budget,
                         const SolverControls& ctrl,
                         const InnerMaxResult* warm) {
  check_square_symmetric(S, "inner_max");
  if (lambda_star < 0)
    throw std::invalid_argument("inner_max: lambda_star must be >= 0");
  if (!(trace_budget > 0))
    throw std::invalid_argument("inner_max: trace budget must be > 0");
  const long d = S.rows();

  const double tol = ctrl.gap_tolerance >= 0
                         ? ctrl.gap_tolerance
                         : 1e-6 * std::max(1.0, trace_budget * S.norm());

  auto objective = [&](const Mat& M) {
    return S.cwiseProduct(M).sum() - lambda_star * M.cwiseAbs().sum();
  };

  InnerMaxResult res;
  res.M.trace_budget = trace_budget;

  // Certificates from fixed candidates. U = 0 and U = clip(S) are always
  // feasible; each bounds the optimum from above by weak duality.
  res.U = Mat::Zero(d, d);
  res.certified_bound = trace_budget * std::max(max_eigenvalue(S), 0.0);
  {
    Mat u_clip = clip_entries(S, lambda_star);
    double b = trace_budget * std::max(max_eigenvalue(S - u_clip), 0.0);
    if (b < res.certified_bound) {
      res.certified_bound = b;
      res.U = u_clip;
    }
  }

  Mat M, Z, V;
  if (warm != nullptr && warm->M.M.rows() == d) {
    M = warm->M.M;
    Z = M;
    V = Mat::Zero(d, d);
  } else {
    // Start from the best of M = 0 and the top-eigenvector vertex.
    Eigen::SelfAdjointEigenSolver<Mat> eig;
    if (d <= 3)
      eig.computeDirect(S);
    else
      eig.compute(S);
    Vec v1 = eig.eigenvectors().col(d - 1);
    Mat vertex = trace_budget * v1 * v1.transpose();
    M = objective(vertex) > 0 ? vertex : Mat::Zero(d, d);
    Z = M;
    V = Mat::Zero(d, d);
  }

  res.value = std::max(objective(M), 0.0);
  res.M.M = res.value > 0 ? M : Mat::Zero(d, d);

  double rho = std::max(0.1, lambda_star);
  const int cert_every = 5;

  for (int it = 1; it <= ctrl.max_inner_iters; ++it) {
    res.iterations = it;
    M = project_spectrahedron(Z - V + S / rho, trace_budget).M;
    Mat z_new = soft_threshold(M + V, lambda_star / rho);
    const double dual_res = rho * (z_new - Z).norm();
    Z = std::move(z_new);
    V += M - Z;
    const double prim_res = (M - Z).norm();

    const double val = objective(M);
    if (val > res.value) {
      res.value = val;
      res.M.M = M;
    }

    if (it % cert_every == 0 || it == ctrl.max_inner_iters) {
      // rho * V approximates the optimal dual; clip to make it feasible.
      Mat u_cand = clip_entries(0.5 * rho * (V + V.transpose()), lambda_star);
      double b = trace_budget * std::max(max_eigenvalue(S - u_cand), 0.0);
      if (b < res.certified_bound) {
        res.certified_bound = b;
        res.U = u_cand;
      }
      if (res.certified_bound - res.value <= tol) {
        res.converged = true;
        break;
      }
    }

    if (it % 10 == 0) {
      if (prim_res > 10.0 * dual_res) {
        rho *= 2.0;
        V *= 0.5;
      } else if (dual_res > 10.0 * prim_res) {
        rho *= 0.5;
        V *= 2.0;
      }
    }
  }

  if (res.M.M.rows() == 0) res.M.M = Mat::Zero(d, d);
  if (!res.converged)
    res.converged = res.certified_bound - res.value <= tol;
  return res;
}

namespace {

// argmin over the truncated simplex of <w, costs>: fill the cheapest
// coordinates at the box cap until the unit mass is spent. Ties broken by
// index so the result is deterministic.
Vec greedy_simplex_argmin(const Vec& costs, double cap) {
  const long n = costs.size();
  std::vector<long> idx(static_cast<size_t>(n));
  std::iota(idx.begin(), idx.end(), 0l);
  std::sort(idx.begin(), idx.end(), [&](long a, long b) {
    if (costs[a] != costs[b]) return costs[a] < costs[b];
    return a < b;
  });
  Vec w = Vec::Zero(n);
  double remaining = 1.0;
  for (long i : idx) {
    const double take = std::min(cap, remaining);
    w[i] = take;
    remaining -= take;
    if (remaining <= 0) break;
  }
  return w;
}

}  // namespace

WeightSolution compute_weight(const PrunedMatrix& pruned, double lambda_star,
                              double tau_suc, double epsilon,
                              double trace_budget, const SolverControls& ctrl) {
  pruned.validate();
  if (lambda_star < 0)
    throw std::invalid_argument("compute_weight: lambda_star must be >= 0");
  if (!(tau_suc >= 0) || !std::isfinite(tau_suc))
    throw std::invalid_argument("compute_weight: tau_suc must be finite and >= 0");
  if (!(epsilon >= 0 && epsilon < 1))
    throw std::invalid_argument("compute_weight: epsilon outside [0, 1)");
  if (!(trace_budget > 0))
    throw std::invalid_argument("compute_weight: trace budget must be > 0");

  const Mat& X = pruned.X_tilde;
  const long n = X.rows();
  if (n < 1) throw std::invalid_argument("compute_weight: empty data");
  const double cap = 1.0 / (static_cast<double>(n) * (1.0 - epsilon));

  const double gap_tol = ctrl.gap_tolerance >= 0
                             ? ctrl.gap_tolerance
                             : 1e-4 * std::max(1.0, tau_suc);
  SolverControls inner_ctrl = ctrl;
  inner_ctrl.gap_tolerance = 0.25 * gap_tol;

  auto weighted_gram = [&](const Vec& w) {
    Mat xw = X;
    xw.array().colwise() *= w.array();
    return Mat(X.transpose() * xw);
  };
  auto contractions = [&](const Mat& M) {
    return Vec(((X * M).cwiseProduct(X)).rowwise().sum());
  };

  WeightSolution sol;
  Vec w = Vec::Constant(n, 1.0 / static_cast<double>(n));
  InnerMaxResult inner = inner_max(weighted_gram(w), lambda_star, trace_budget,
                                   inner_ctrl, nullptr);
  sol.uniform_value = inner.value;
  sol.value = inner.value;
  sol.w_hat = TruncatedSimplexPoint{w, epsilon};
  sol.certificate_U = inner.U;
  sol.certificate_bound = inner.certified_bound;
  sol.inner_converged = inner.converged;

  auto adopt_if_better = [&](const Vec& cand, const InnerMaxResult& res) {
    if (res.value < sol.value) {
      sol.value = res.value;
      sol.w_hat.w = cand;
      sol.certificate_U = res.U;
      sol.certificate_bound = res.certified_bound;
      return true;
    }
    return false;
  };

  Vec g = contractions(inner.M.M);
  sol.lower_bound = g.dot(greedy_simplex_argmin(g, cap)) -
                    lambda_star * inner.M.M.cwiseAbs().sum();

  Vec w_sum = w;  // for the averaged iterate
  int averaged = 1;

  for (int t = 1; t <= ctrl.max_outer_iters; ++t) {
    if (sol.value - sol.lower_bound <= gap_tol) {
      sol.converged = true;
      break;
    }
    if (ctrl.early_success_exit && sol.value <= tau_suc) break;

    // Every few iterations, probe the exact best response to the current
    // inner maximizer. Against concentrated contamination the greedy
    // weights land on the optimal support immediately.
    if (t == 1 || t % 5 == 0) {
      Vec w_br = greedy_simplex_argmin(g, cap);
      InnerMaxResult br = inner_max(weighted_gram(w_br), lambda_star,
                                    trace_budget, inner_ctrl, &inner);
      sol.inner_converged = sol.inner_converged && br.converged;
      sol.lower_bound =
          std::max(sol.lower_bound,
                   contractions(br.M.M).dot(greedy_simplex_argmin(
                       contractions(br.M.M), cap)) -
                       lambda_star * br.M.M.cwiseAbs().sum());
      if (adopt_if_better(w_br, br)) {
        w = w_br;
        inner = br;
        g = contractions(inner.M.M);
        continue;
      }
    }

    const double gnorm = g.norm();
    if (gnorm <= 1e-300) {
      sol.converged = true;
      break;
    }
    // Polyak-type step toward the certified lower bound, with the
    // diminishing fallback when the bound is uninformative.
    double step;
    const double slack = inner.value - sol.lower_bound;
    if (slack > 0 && std::isfinite(slack)) {
      step = slack / (gnorm * gnorm);
    } else {
      step = std::sqrt(2.0) / (gnorm * std::sqrt(static_cast<double>(t)));
    }
    w = project_truncated_simplex(w - step * g, epsilon).w;
    inner = inner_max(weighted_gram(w), lambda_star, trace_budget, inner_ctrl,
                      &inner);
    sol.iterations = t;
    sol.inner_converged = sol.inner_converged && inner.converged;

    g = contractions(inner.M.M);
    sol.lower_bound =
        std::max(sol.lower_bound,
                 g.dot(greedy_simplex_argmin(g, cap)) -
                     lambda_star * inner.M.M.cwiseAbs().sum());
    adopt_if_better(w, inner);
    w_sum += w;
    ++averaged;
  }

  // The averaged iterate carries the subgradient guarantee; keep it when it
  // beats the best single iterate.
  if (averaged > 1 && !(sol.converged)) {
    Vec w_avg = w_sum / static_cast<double>(averaged);
    InnerMaxResult avg_inner = inner_max(weighted_gram(w_avg), lambda_star,
                                         trace_budget, inner_ctrl, &inner);
    sol.inner_converged = sol.inner_converged && avg_inner.converged;
    adopt_if_better(w_avg, avg_inner);
  }

  sol.w_hat.validate();
  sol.success = sol.value <= tau_suc;
  if (!sol.converged)
    sol.converged = sol.value - sol.lower_bound <= gap_tol;
  return sol;
}

}  // namespace robreg
