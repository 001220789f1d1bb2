#include "robreg/tuning.hpp"

#include <cmath>
#include <stdexcept>

#include "robreg/model_core.hpp"

namespace robreg {

namespace {

void check(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

struct Powers {
  double s2, s4_2, s4_4, s8_4, s8_8, op2, op4, lam2, lam4, K2, K4;
  explicit Powers(const MomentProfile& p)
      : s2(p.sigma_x2),
        s4_2(p.sigma_x4 * p.sigma_x4),
        s4_4(s4_2 * s4_2),
        s8_4(std::pow(p.sigma_x8, 4)),
        s8_8(s8_4 * s8_4),
        op2(p.sigma_op * p.sigma_op),
        op4(op2 * op2),
        lam2(p.lambda_Sigma * p.lambda_Sigma),
        lam4(lam2 * lam2),
        K2(p.kurtosis_K * p.kurtosis_K),
        K4(K2 * K2) {}
};

}  // namespace

void EstimatorConfig::validate() const {
  check(n >= 1 && d >= 3 && s >= 1, "EstimatorConfig: bad problem sizes");
  check(o >= 0 && o <= n, "EstimatorConfig: o outside [0, n]");
  check(delta > 0 && delta < 1, "EstimatorConfig: delta outside (0, 1)");
  for (double v : {tau_x, lambda_star, lambda_star_prime, tau_suc_prime,
                   lambda_o, lambda_s, r}) {
    check(v > 0 && std::isfinite(v), "EstimatorConfig: non-positive parameter");
  }
  check(tau_suc >= 0 && std::isfinite(tau_suc), "EstimatorConfig: bad tau_suc");
  check(c_s >= 6.0, "EstimatorConfig: c_s must be >= 6");
  check(C_s >= 300.0, "EstimatorConfig: C_s must be >= 300");
  check(c_suc >= 1.0, "EstimatorConfig: c_suc must be >= 1");
  check(lambda_star >= lambda_star_prime * (1 - 1e-12),
        "EstimatorConfig: lambda_star below lambda_star_prime");
  const double ratio = tau_suc / tau_suc_prime;
  check(std::fabs(ratio - c_suc) <= 1e-9 * c_suc,
        "EstimatorConfig: tau_suc != c_suc * tau_suc_prime");
  const double eps_floor =
      std::max(static_cast<double>(o) / n, 1.0 / static_cast<double>(n));
  check(epsilon >= eps_floor * (1 - 1e-12) && epsilon < 1.0,
        "EstimatorConfig: epsilon outside [max(o/n, 1/n), 1)");
}

double lambda_star_prime(const MomentProfile& profile, const Rates& rates,
                         double tau_x, double epsilon) {
  check(tau_x > 0, "lambda_star_prime: tau_x must be > 0");
  check(epsilon < 1, "lambda_star_prime: epsilon must be < 1");
  const double s4_2 = profile.sigma_x4 * profile.sigma_x4;
  const double s4_4 = s4_2 * s4_2;
  const double rd = rates.r_d, rdel = rates.r_delta;
  return (std::sqrt(2.0) * s4_2 * (rd + rdel) +
          tau_x * tau_x * (rd * rd + rdel * rdel) +
          2.0 * s4_4 / (tau_x * tau_x)) /
         (1.0 - epsilon);
}

namespace {

// Shared scaffolding: sizes, Remark-1 clip threshold, rates, epsilon, and
// the penalty pair (lambda*', lambda*).
EstimatorConfig base_config(const MomentProfile& profile, long n, long d,
                            long s, long o, double delta) {
  profile.validate();
  check(!profile.singular_gram && profile.lambda_Sigma > 0,
        "tuning: profile has lambda_Sigma = 0 (singular design)");
  check(n >= 1 && d >= 3, "tuning: need n >= 1, d >= 3");
  check(s >= 1 && s <= d, "tuning: need 1 <= s <= d");
  check(o >= 0 && o <= n, "tuning: o outside [0, n]");
  check(delta > 0 && delta < 1, "tuning: delta outside (0, 1)");

  EstimatorConfig cfg;
  cfg.n = n;
  cfg.d = d;
  cfg.s = s;
  cfg.o = o;
  cfg.delta = delta;
  cfg.profile_estimated = profile.estimated;

  Rates r0 = compute_rates(n, d, o, delta, 0.0, profile.sigma_x2);
  cfg.tau_x = std::pow(r0.r_d * r0.r_d + r0.r_delta * r0.r_delta, -0.25);
  cfg.epsilon = std::max(static_cast<double>(o) / n,
                         1.0 / static_cast<double>(n));

  Rates rates = compute_rates(n, d, o, delta, cfg.tau_x, profile.sigma_x2);
  cfg.lambda_star_prime =
      lambda_star_prime(profile, rates, cfg.tau_x, cfg.epsilon);
  cfg.lambda_star = cfg.lambda_star_prime;
  return cfg;
}

TheoremFlags evaluate_flags(const EstimatorConfig& cfg,
                            const MomentProfile& profile, double beta_l1) {
  Powers p(profile);
  TheoremFlags f;
  const double n = static_cast<double>(cfg.n);
  const double s = static_cast<double>(cfg.s);
  const double lam_o_sqrt_n = cfg.lambda_o * std::sqrt(n);
  const double tau2 = cfg.tau_x * cfg.tau_x;

  const double tau2_need = std::max(
      {beta_l1 * beta_l1 * p.s8_8 * p.op2 / (s * cfg.lambda_o * cfg.lambda_o * n),
       std::sqrt(beta_l1 / lam_o_sqrt_n), 108.0 * p.s4_4 * s / p.lam2,
       std::pow(beta_l1 * p.s8_4, 2.0 / 3.0), 9.0 * p.s8_4 * s / p.K2});
  f.tau_x_condition = tau2 >= tau2_need;

  f.radius_le_one = cfg.r <= 1.0;
  f.epsilon_lt_half = cfg.epsilon < 0.5;
  f.lambda_sigma_le_one = profile.lambda_Sigma <= 1.0;

  Rates r0 = compute_rates(cfg.n, cfg.d, cfg.o, cfg.delta, 0.0, profile.sigma_x2);
  f.remark_premise =
      (std::sqrt(2.0) * p.s4_2 + 1.0 + 2.0 * p.s4_4) * (r0.r_d + r0.r_delta) *
          std::sqrt(s) <
      (1.0 - cfg.epsilon) * profile.sigma_op;

  const double size_term = std::max(
      {beta_l1 * beta_l1 * p.s8_8 * p.op2 / (s * cfg.lambda_o * cfg.lambda_o * n),
       beta_l1 / lam_o_sqrt_n, 108.0 * p.s4_4 * s / p.lam2, beta_l1 * p.s8_4,
       9.0 * p.s8_4 * s / p.K2, 1.0});
  f.sample_size =
      size_term * std::sqrt(std::log(static_cast<double>(cfg.d) / cfg.delta)) <=
      std::sqrt(n);
  return f;
}

}  // namespace

EstimatorConfig default_config(const MomentProfile& profile, long n, long d,
                               long s, long o, double delta,
                               std::optional<double> beta_star_l1) {
  EstimatorConfig cfg = base_config(profile, n, d, s, o, delta);
  cfg.mode = "theorem";
  Powers p(profile);
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  const double sqrt_s = std::sqrt(static_cast<double>(s));

  const double lam_o_sqrt_n =
      std::max({16.0 * profile.kurtosis_K * profile.sigma_op / p.lam2,
                300.0 * p.K4 * p.op4 * (profile.sigma_noise + 1.0) / p.lam4,
                4.0 * p.K2 * p.op2});
  cfg.lambda_o = lam_o_sqrt_n / sqrt_n;

  Rates rates = compute_rates(n, d, o, delta, cfg.tau_x, profile.sigma_x2);
  const double tau2 = cfg.tau_x * cfg.tau_x;
  const double moment_term = (p.s2 * p.s4_2 + p.s8_8) / tau2;
  const double sqrt_lams =
      std::sqrt(cfg.lambda_star) + std::sqrt(cfg.lambda_star_prime);
  const double outlier_core = sqrt_lams * rates.r_o +
                              std::sqrt(cfg.lambda_star_prime * cfg.epsilon);
  const double op_term = profile.sigma_op * (std::sqrt(cfg.c_suc) * rates.r_o +
                                             std::sqrt(cfg.epsilon));

  cfg.lambda_s = cfg.c_s * lam_o_sqrt_n *
                 (rates.r_ddelta + moment_term + outlier_core +
                  op_term / sqrt_s + 1.0 / tau2);

  cfg.r = cfg.C_s * sqrt_s * cfg.lambda_s / p.lam2 +
          cfg.C_s * (lam_o_sqrt_n / p.lam2) *
              (sqrt_s * (rates.r_ddelta + moment_term + outlier_core) +
               op_term + sqrt_s / tau2);

  cfg.tau_suc_prime = p.op2 * cfg.r * cfg.r / (1.0 - cfg.epsilon);
  cfg.tau_suc = cfg.c_suc * cfg.tau_suc_prime;

  cfg.beta_l1_plugin = !beta_star_l1.has_value();
  const double beta_l1 = beta_star_l1.value_or(sqrt_s);
  cfg.flags = evaluate_flags(cfg, profile, beta_l1);
  cfg.validate();
  return cfg;
}

EstimatorConfig bench_config(const MomentProfile& profile, long n, long d,
                             long s, long o, double delta) {
  EstimatorConfig cfg = base_config(profile, n, d, s, o, delta);
  cfg.mode = "bench";
  Powers p(profile);
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  const double sqrt_s = std::sqrt(static_cast<double>(s));

  // Huber scale: keep the kurtosis-driven bounds, drop the worst-case
  // constant-300 term so realistic response outliers land in the linear
  // branch while clean residuals stay quadratic.
  const double lam_o_sqrt_n =
      std::max({16.0 * profile.kurtosis_K * profile.sigma_op / p.lam2,
                4.0 * p.K2 * p.op2});
  cfg.lambda_o = lam_o_sqrt_n / sqrt_n;

  Rates rates = compute_rates(n, d, o, delta, cfg.tau_x, profile.sigma_x2);
  // Noise standard deviation proxy from the first-absolute-moment bound
  // (exact for Gaussian noise).
  const double sd = profile.sigma_noise * std::sqrt(M_PI / 2.0);
  const double sqrt_lams =
      std::sqrt(cfg.lambda_star) + std::sqrt(cfg.lambda_star_prime);
  const double contamination_term =
      sqrt_lams * rates.r_o + std::sqrt(cfg.lambda_star_prime * cfg.epsilon) +
      profile.sigma_op * (rates.r_o + std::sqrt(cfg.epsilon)) / sqrt_s;
  cfg.lambda_s =
      sd * (2.0 * (rates.r_d + rates.r_delta) + 0.5 * contamination_term);

  cfg.r = 1.0;  // the weight program is scale-invariant in the budget
  cfg.tau_suc_prime = p.op2 * cfg.r * cfg.r / (1.0 - cfg.epsilon);
  cfg.tau_suc = cfg.c_suc * cfg.tau_suc_prime;

  cfg.beta_l1_plugin = true;
  cfg.flags = evaluate_flags(cfg, profile, sqrt_s);
  cfg.validate();
  return cfg;
}

}  // namespace robreg
