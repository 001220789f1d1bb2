#pragma once

#include <cstdint>
#include <string>

#include "robreg/types.hpp"

namespace robreg {

enum class CovariateLaw { kGaussian, kStudentT, kSymmetricPareto };
enum class NoiseLaw { kGaussian, kStudentT, kLaplace };
enum class Contamination { kNone, kOblivious, kLeverage, kAdaptiveResponse };

std::string to_string(CovariateLaw law);
std::string to_string(NoiseLaw law);
std::string to_string(Contamination c);
CovariateLaw covariate_law_from_string(const std::string& s);
NoiseLaw noise_law_from_string(const std::string& s);
Contamination contamination_from_string(const std::string& s);

// Synthetic-instance recipe. Covariates are standardized to unit population
// variance per coordinate before contamination; heavy-tailed laws must have
// finite 8th moments (student_t df > 8, pareto tail > 8). Student-t noise
// accepts df >= 2 to probe infinite-variance noise with a finite absolute
// moment.
struct GeneratorSpec {
  long n = 0, d = 0, s = 0;
  CovariateLaw covariate_law = CovariateLaw::kGaussian;
  double covariate_df = 9;   // student_t covariates
  double pareto_tail = 9;    // symmetric pareto covariates
  double rho = 0;            // Toeplitz correlation, 0 <= rho < 1
  NoiseLaw noise_law = NoiseLaw::kGaussian;
  double noise_df = 3;       // student_t noise
  double beta_scale = 1;     // magnitude of the nonzero beta* entries
  Contamination contamination = Contamination::kNone;
  long o = 0;
  double magnitude = 0;      // total response/covariate corruption size
  std::uint64_t seed = 0;

  void validate() const;
};

// Draws y_i = x_i^T beta* + xi_i, then lets the adversary replace the o
// chosen samples. Per-sample RNG sub-streams make the draw deterministic in
// the seed and leave inlier rows bit-identical to the uncontaminated draw.
// The recorded theta_i = (y_i - X_i^T beta* - xi_i)/sqrt(n) per outlier is
// returned alongside for audit.
struct GeneratedInstance {
  RegressionInstance instance;
  Vec theta;  // length o, aligned with truth->outlier_set
};
GeneratedInstance generate(const GeneratorSpec& spec);

// Analytic moment constants of the spec's laws. Supported: gaussian with
// any Toeplitz rho (marginals stay standard normal); student_t and pareto
// only with rho = 0. Others are rejected.
MomentProfile true_moment_profile(const GeneratorSpec& spec);

}  // namespace robreg
