#include "robreg/huber.hpp"

#include <cmath>
#include <stdexcept>

namespace robreg {

double huber_value(double t) {
  const double a = std::fabs(t);
  return a > 1.0 ? a - 0.5 : 0.5 * t * t;
}

double huber_deriv(double t) {
  if (t > 1.0) return 1.0;
  if (t < -1.0) return -1.0;
  return t;
}

void HuberObjective::validate() const {
  if (!(lambda_o > 0) || !std::isfinite(lambda_o))
    throw std::invalid_argument("HuberObjective: lambda_o must be > 0");
  if (!(lambda_s >= 0) || !std::isfinite(lambda_s))
    throw std::invalid_argument("HuberObjective: lambda_s must be >= 0");
  weights.validate();
  if (y.size() != X.rows() || weights.n() != X.rows())
    throw std::invalid_argument("HuberObjective: size mismatch");
  if (X.rows() < 1 || X.cols() < 1)
    throw std::invalid_argument("HuberObjective: empty data");
}

namespace {

// Shared evaluation pieces. The standardized residual argument is
//   a_i = n w'_i (y_i - x_i^T beta) / (lambda_o sqrt(n));
// dropped samples (w'_i = 0) contribute exact zeros throughout.
struct Eval {
  const HuberObjective& obj;
  double n, sqrt_n, lo2;
  Vec nw;  // n * w'_i, each 0 or 1

  explicit Eval(const HuberObjective& o)
      : obj(o),
        n(static_cast<double>(o.X.rows())),
        sqrt_n(std::sqrt(n)),
        lo2(o.lambda_o * o.lambda_o),
        nw(n * o.weights.w_prime.array()) {}

  double smooth(const Vec& residual) const {
    double total = 0;
    const double scale = 1.0 / (obj.lambda_o * sqrt_n);
    for (long i = 0; i < residual.size(); ++i) {
      if (nw[i] == 0.0) continue;
      total += huber_value(nw[i] * residual[i] * scale);
    }
    return lo2 * total;
  }

  Vec smooth_grad(const Vec& residual) const {
    const double scale = 1.0 / (obj.lambda_o * sqrt_n);
    Vec s(residual.size());
    for (long i = 0; i < residual.size(); ++i) {
      s[i] = nw[i] == 0.0
                 ? 0.0
                 : -(obj.lambda_o / sqrt_n) * nw[i] *
                       huber_deriv(nw[i] * residual[i] * scale);
    }
    return obj.X.transpose() * s;
  }
};

double soft(double v, double k) {
  if (v > k) return v - k;
  if (v < -k) return v + k;
  return 0.0;
}

// max_j distance of -grad_j from the subdifferential of lambda_s |.| at beta_j
double stationarity_residual(const Vec& grad, const Vec& beta, double lambda_s) {
  double worst = 0;
  for (long j = 0; j < beta.size(); ++j) {
    double r;
    if (beta[j] > 0)
      r = std::fabs(grad[j] + lambda_s);
    else if (beta[j] < 0)
      r = std::fabs(grad[j] - lambda_s);
    else
      r = std::max(std::fabs(grad[j]) - lambda_s, 0.0);
    worst = std::max(worst, r);
  }
  return worst;
}

// Largest eigenvalue of (1/n) sum over kept samples of x_i x_i^T via power
// iteration on matrix-vector products; bounds the smooth part's curvature
// since H'' <= 1.
double lipschitz_estimate(const Mat& X, const Vec& nw) {
  const long d = X.cols();
  Vec v = Vec::Constant(d, 1.0 / std::sqrt(static_cast<double>(d)));
  double lam = 0;
  const double inv_n = 1.0 / static_cast<double>(X.rows());
  for (int it = 0; it < 100; ++it) {
    Vec u = X * v;
    for (long i = 0; i < u.size(); ++i) u[i] *= nw[i] * nw[i] * inv_n;
    Vec t = X.transpose() * u;
    double norm = t.norm();
    if (norm <= 0) return 0;
    double lam_new = v.dot(t);
    v = t / norm;
    if (std::fabs(lam_new - lam) <= 1e-6 * std::max(1.0, lam_new)) {
      lam = lam_new;
      break;
    }
    lam = lam_new;
  }
  return std::max(lam, 0.0);
}

}  // namespace

double objective_value(const Vec& beta, const HuberObjective& obj) {
  obj.validate();
  if (beta.size() != obj.X.cols())
    throw std::invalid_argument("objective_value: beta has wrong length");
  Eval ev(obj);
  return ev.smooth(obj.y - obj.X * beta) +
         obj.lambda_s * beta.cwiseAbs().sum();
}

Vec smooth_gradient(const Vec& beta, const HuberObjective& obj) {
  obj.validate();
  if (beta.size() != obj.X.cols())
    throw std::invalid_argument("smooth_gradient: beta has wrong length");
  Eval ev(obj);
  return ev.smooth_grad(obj.y - obj.X * beta);
}

std::pair<Vec, HuberDiagnostics> huber_solve(const HuberObjective& obj,
                                             const HuberControls& ctrl) {
  obj.validate();
  const long d = obj.X.cols();
  Eval ev(obj);

  double L = lipschitz_estimate(obj.X, ev.nw);
  if (L <= 0) L = 1.0;
  L *= 1.05;

  Vec x = Vec::Zero(d);  // convexity makes the start a speed choice only
  Vec y_pt = x;
  double t_mom = 1.0;

  Vec res_x = obj.y;  // residual at x
  double fx = ev.smooth(res_x);
  double Fx = fx + obj.lambda_s * x.cwiseAbs().sum();

  HuberDiagnostics diag;
  diag.objective = Fx;

  for (int it = 1; it <= ctrl.max_iters; ++it) {
    diag.iterations = it;
    Vec res_y = obj.y - obj.X * y_pt;
    double fy = ev.smooth(res_y);
    Vec gy = ev.smooth_grad(res_y);

    // backtracking on the quadratic upper model
    Vec x_new;
    Vec res_new;
    double f_new;
    for (;;) {
      x_new = y_pt - gy / L;
      for (long j = 0; j < d; ++j) x_new[j] = soft(x_new[j], obj.lambda_s / L);
      res_new = obj.y - obj.X * x_new;
      f_new = ev.smooth(res_new);
      Vec diff = x_new - y_pt;
      double model = fy + gy.dot(diff) + 0.5 * L * diff.squaredNorm();
      if (f_new <= model + 1e-12 * std::max(1.0, std::fabs(model))) break;
      L *= 2.0;
      if (L > 1e18) break;  // curvature exhausted; accept the prox step
    }
    double F_new = f_new + obj.lambda_s * x_new.cwiseAbs().sum();

    if (F_new > Fx + 1e-12 * std::max(1.0, std::fabs(Fx))) {
      // momentum overshot: restart from the last accepted point
      y_pt = x;
      t_mom = 1.0;
      continue;
    }

    double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_mom * t_mom));
    y_pt = x_new + ((t_mom - 1.0) / t_next) * (x_new - x);
    t_mom = t_next;
    x = x_new;
    res_x = res_new;
    fx = f_new;
    Fx = F_new;

    diag.objective = Fx;
    diag.stationarity = stationarity_residual(ev.smooth_grad(res_x), x,
                                              obj.lambda_s);
    if (diag.stationarity <= ctrl.tolerance) {
      diag.converged = true;
      break;
    }
  }

  if (!diag.converged) {
    diag.stationarity =
        stationarity_residual(ev.smooth_grad(res_x), x, obj.lambda_s);
    diag.converged = diag.stationarity <= ctrl.tolerance;
  }
  diag.objective = Fx;
  return {x, diag};
}

}  // namespace robreg
