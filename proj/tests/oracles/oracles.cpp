#include "oracles.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace robreg::oracle {

namespace {

// Objective at M = sum_k lam_k q_k q_k^T given the column vectors of Q.
double eval_candidate(const Mat& S, double lambda_star,
                      const std::vector<Vec>& cols, const Vec& lam) {
  const long d = S.rows();
  Mat M = Mat::Zero(d, d);
  double linear = 0;
  for (long k = 0; k < lam.size(); ++k) {
    if (lam[k] == 0) continue;
    M.noalias() += lam[k] * cols[k] * cols[k].transpose();
    linear += lam[k] * cols[k].dot(S * cols[k]);
  }
  return linear - lambda_star * M.cwiseAbs().sum();
}

Mat rotation2(double theta) {
  double c = std::cos(theta), s = std::sin(theta);
  Mat q(2, 2);
  q << c, -s, s, c;
  return q;
}

Mat rotation_zyz(double a, double b, double g) {
  double ca = std::cos(a), sa = std::sin(a);
  double cb = std::cos(b), sb = std::sin(b);
  double cg = std::cos(g), sg = std::sin(g);
  Mat rza(3, 3), ryb(3, 3), rzg(3, 3);
  rza << ca, -sa, 0, sa, ca, 0, 0, 0, 1;
  ryb << cb, 0, sb, 0, 1, 0, -sb, 0, cb;
  rzg << cg, -sg, 0, sg, cg, 0, 0, 0, 1;
  return rza * ryb * rzg;
}

std::vector<Vec> columns(const Mat& q) {
  std::vector<Vec> cols;
  for (long k = 0; k < q.cols(); ++k) cols.push_back(q.col(k));
  return cols;
}

struct SearchState {
  double value = 0;           // best objective; M = 0 is always feasible
  std::vector<double> angles; // best rotation parameters
  Vec lam;                    // best spectrum
};

// Enumerates the simplex grid {lam >= 0, sum lam <= budget} with `steps`
// subdivisions and keeps the best candidate.
void scan_lambda_grid(const Mat& S, double lambda_star, double trace_budget,
                      int steps, const std::vector<Vec>& cols,
                      const std::vector<double>& angles, SearchState& best) {
  const long d = S.rows();
  const double dl = trace_budget / steps;
  Vec lam(d);
  if (d == 2) {
    for (int a = 0; a <= steps; ++a) {
      for (int b = 0; b + a <= steps; ++b) {
        lam << a * dl, b * dl;
        double v = eval_candidate(S, lambda_star, cols, lam);
        if (v > best.value) best = {v, angles, lam};
      }
    }
  } else {
    for (int a = 0; a <= steps; ++a) {
      for (int b = 0; b + a <= steps; ++b) {
        for (int c = 0; c + b + a <= steps; ++c) {
          lam << a * dl, b * dl, c * dl;
          double v = eval_candidate(S, lambda_star, cols, lam);
          if (v > best.value) best = {v, angles, lam};
        }
      }
    }
  }
}

void check_symmetric(const Mat& S) {
  const double scale = std::max(1.0, S.cwiseAbs().maxCoeff());
  if ((S - S.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw std::invalid_argument("brute oracle: S must be symmetric");
}

}  // namespace

BruteValue brute_inner_max(const Mat& S, double lambda_star,
                           double trace_budget, int grid, int refine_rounds) {
  const long d = S.rows();
  if (d != 2 && d != 3)
    throw std::invalid_argument("brute_inner_max: only d in {2, 3}");
  if (S.cols() != d) throw std::invalid_argument("brute_inner_max: S not square");
  check_symmetric(S);
  if (grid < 2) throw std::invalid_argument("brute_inner_max: grid too coarse");
  if (!(trace_budget > 0) || lambda_star < 0)
    throw std::invalid_argument("brute_inner_max: bad parameters");

  SearchState best;  // value 0 at M = 0
  const double step = M_PI / grid;

  if (d == 2) {
    for (int t = 0; t < grid; ++t) {
      double theta = t * step;
      auto cols = columns(rotation2(theta));
      scan_lambda_grid(S, lambda_star, trace_budget, grid, cols, {theta}, best);
    }
  } else {
    // alpha needs the full turn; beta covers [0, pi]; gamma in [0, pi)
    // suffices because Rz(pi) only flips column signs.
    for (int ia = 0; ia < 2 * grid; ++ia) {
      for (int ib = 0; ib <= grid; ++ib) {
        for (int ig = 0; ig < grid; ++ig) {
          std::vector<double> ang = {ia * step, ib * step, ig * step};
          auto cols = columns(rotation_zyz(ang[0], ang[1], ang[2]));
          scan_lambda_grid(S, lambda_star, trace_budget, grid, cols, ang, best);
        }
      }
    }
  }

  // Resolution of the raw grid: |f(M) - f(M')| <= (||S||_F + lam* d) ||dM||_F,
  // ||dM||_F <= 2 * budget * (total angle offset) + sqrt(d) * (lambda step).
  const double lip = S.norm() + lambda_star * d;
  const double n_angles = (d == 2) ? 1.0 : 3.0;
  const double res =
      lip * (2.0 * trace_budget * n_angles * step / 2.0 +
             std::sqrt(static_cast<double>(d)) * trace_budget / grid);

  // Local window refinement around the best candidate. Each pass shrinks the
  // steps 5x; evaluated points stay feasible, so the value remains a lower
  // bound on the true optimum.
  if (best.lam.size() > 0) {
    double ang_step = step;
    double lam_step = trace_budget / grid;
    const int window = 2;
    for (int round = 0; round < refine_rounds; ++round) {
      ang_step /= 5.0;
      lam_step /= 5.0;
      SearchState cur = best;
      std::vector<int> ang_off(best.angles.size(), -window);
      // enumerate angle offsets
      for (;;) {
        std::vector<double> ang(best.angles.size());
        for (size_t k = 0; k < ang.size(); ++k)
          ang[k] = best.angles[k] + ang_off[k] * ang_step;
        Mat q = (d == 2) ? rotation2(ang[0])
                         : rotation_zyz(ang[0], ang[1], ang[2]);
        auto cols = columns(q);
        // enumerate spectrum offsets
        std::vector<int> lam_off(static_cast<size_t>(d), -window);
        for (;;) {
          Vec lam(d);
          bool ok = true;
          double total = 0;
          for (long k = 0; k < d; ++k) {
            lam[k] = best.lam[k] + lam_off[k] * lam_step;
            if (lam[k] < 0) ok = false;
            total += lam[k];
          }
          if (ok && total <= trace_budget + 1e-15) {
            double v = eval_candidate(S, lambda_star, cols, lam);
            if (v > cur.value) cur = {v, ang, lam};
          }
          size_t k = 0;
          while (k < lam_off.size() && ++lam_off[k] > window)
            lam_off[k++] = -window;
          if (k == lam_off.size()) break;
        }
        size_t k = 0;
        while (k < ang_off.size() && ++ang_off[k] > window)
          ang_off[k++] = -window;
        if (k == ang_off.size()) break;
      }
      best = cur;
    }
  }

  return {best.value, res};
}

BruteValue brute_simplex_min(const std::vector<Mat>& gram_rows,
                             double lambda_star, double trace_budget,
                             double epsilon, int grid) {
  const long n = static_cast<long>(gram_rows.size());
  if (n < 1 || n > 4)
    throw std::invalid_argument("brute_simplex_min: n must be in [1, 4]");
  const long d = gram_rows[0].rows();
  if (d != 2 && d != 3)
    throw std::invalid_argument("brute_simplex_min: only d in {2, 3}");
  if (!(epsilon >= 0 && epsilon < 1))
    throw std::invalid_argument("brute_simplex_min: epsilon outside [0, 1)");
  const double cap = 1.0 / (n * (1.0 - epsilon));

  auto inner_value = [&](const Mat& S) -> BruteValue {
    if (lambda_star == 0.0) {
      Eigen::SelfAdjointEigenSolver<Mat> eig;
      eig.computeDirect(S);
      return {trace_budget * std::max(eig.eigenvalues().maxCoeff(), 0.0), 0.0};
    }
    return brute_inner_max(S, lambda_star, trace_budget, grid, 2);
  };

  BruteValue best;
  bool first = true;
  double inner_res = 0;
  // integer compositions of `grid` into n parts, filtered by the cap
  std::vector<int> comp(static_cast<size_t>(n), 0);
  std::function<void(long, int)> rec = [&](long idx, int left) {
    if (idx == n - 1) {
      comp[idx] = left;
    } else {
      for (int c = 0; c <= left; ++c) {
        comp[idx] = c;
        rec(idx + 1, left - c);
      }
      return;
    }
    Vec w(n);
    for (long i = 0; i < n; ++i) w[i] = static_cast<double>(comp[i]) / grid;
    if ((w.array() > cap + 1e-12).any()) return;
    Mat S = Mat::Zero(d, d);
    for (long i = 0; i < n; ++i) S += w[i] * gram_rows[i];
    BruteValue v = inner_value(S);
    inner_res = std::max(inner_res, v.resolution);
    if (first || v.value < best.value) {
      best = v;
      first = false;
    }
  };
  rec(0, grid);
  if (first)
    throw std::invalid_argument("brute_simplex_min: no feasible grid point");

  // Outer grid error: moving w by one grid cell moves S by at most
  // max_i ||G_i||_F / grid per coordinate.
  double gmax = 0;
  for (const Mat& g : gram_rows) gmax = std::max(gmax, g.norm());
  double outer_res =
      trace_budget * gmax * static_cast<double>(n) / grid + inner_res;
  best.resolution = outer_res;
  return best;
}

Vec finite_diff(const std::function<double(const Vec&)>& f, const Vec& x,
                double h) {
  if (!(h > 0)) throw std::invalid_argument("finite_diff: h must be > 0");
  Vec g(x.size());
  Vec xp = x;
  for (long i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    xp[i] = xi + h;
    const double fp = f(xp);
    xp[i] = xi - h;
    const double fm = f(xp);
    xp[i] = xi;
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

}  // namespace robreg::oracle
