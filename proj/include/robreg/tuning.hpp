#pragma once

#include <optional>
#include <string>

#include "robreg/types.hpp"

namespace robreg {

// Side conditions of the main theorem evaluated at the chosen parameters.
// At desk-scale n several are typically violated; they are reported, never
// silently enforced.
struct TheoremFlags {
  bool tau_x_condition = false;      // clip threshold large enough
  bool radius_le_one = false;        // r <= 1
  bool epsilon_lt_half = false;      // epsilon < 1/2
  bool remark_premise = false;       // closed-form radius premise
  bool sample_size = false;          // concrete sample-size inequality
  bool lambda_sigma_le_one = false;  // the "1 >= lambda_Sigma" simplification

  bool all() const {
    return tau_x_condition && radius_le_one && epsilon_lt_half &&
           remark_premise && sample_size && lambda_sigma_le_one;
  }
};

struct EstimatorConfig {
  // problem sizes the parameters were derived for
  long n = 0, d = 0, s = 0, o = 0;
  double delta = 0.1;

  double tau_x = 0;
  double lambda_star = 0;
  double lambda_star_prime = 0;
  double tau_suc = 0;
  double tau_suc_prime = 0;
  double epsilon = 0;
  double lambda_o = 0;
  double lambda_s = 0;
  double r = 0;  // target radius; r^2 is the spectrahedron trace budget

  double c_s = 6.0;
  double C_s = 300.0;
  double c_suc = 1.0;

  TheoremFlags flags;
  std::string mode = "manual";   // "theorem" | "bench" | "manual"
  bool beta_l1_plugin = false;   // ||beta*||_1 substituted, not supplied
  bool profile_estimated = false;

  double trace_budget() const { return r * r; }
  // Positivity, the constant minima (c_s >= 6, C_s >= 300, c_suc >= 1),
  // lambda_star >= lambda_star_prime, tau_suc = c_suc * tau_suc_prime,
  // epsilon in [max(o/n, 1/n), 1).
  void validate() const;
};

// The population penalty
//   lambda' = (1/(1-eps)) { sqrt(2) s4^2 (r_d + r_delta)
//                           + tau_x^2 (r_d^2 + r_delta^2) + 2 s4^4 / tau_x^2 }
// with s4 the fourth-moment root of the profile.
double lambda_star_prime(const MomentProfile& profile, const Rates& rates,
                         double tau_x, double epsilon);

// Full parameter set at the theorem's stated lower bounds with the minimal
// constants c_s = 6, C_s = 300, c_suc = 1 and the closed-form clip threshold
// tau_x = (r_d^2 + r_delta^2)^{-1/4}. When beta_star_l1 is absent, the side
// conditions that need it are evaluated with the sqrt(s) plug-in and the
// config is marked accordingly. Rejects profiles with lambda_Sigma = 0.
EstimatorConfig default_config(const MomentProfile& profile, long n, long d,
                               long s, long o, double delta,
                               std::optional<double> beta_star_l1 = {});

// Benchmark profile: identical pruning/weighting parameters (those are
// scale-invariant in r, so the trace budget is fixed at r = 1) but Huber
// scale and l1 level sized for finite samples instead of worst-case
// constants. The l1 level keeps the theorem's dependence on the
// contamination rates so the error scales with sqrt(o/n) as in the analysis:
//   lambda_s = sd * ( a (r_d + r_delta)
//                     + b [ (sqrt(l*) + sqrt(l*')) r_o + sqrt(l*' eps)
//                           + (1/sqrt(s)) ||S^1/2||_op (r_o + sqrt(eps)) ] ).
EstimatorConfig bench_config(const MomentProfile& profile, long n, long d,
                             long s, long o, double delta);

}  // namespace robreg
