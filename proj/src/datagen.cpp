#include "robreg/datagen.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "robreg/rng.hpp"

namespace robreg {

namespace {

void check(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// stream-id layout: 0 = global draws, 1..n = per-sample draws,
// n+1..2n = adversary draws for the corresponding sample.
constexpr std::uint64_t kGlobalStream = 0;

double draw_covariate(RngStream& rng, const GeneratorSpec& spec) {
  switch (spec.covariate_law) {
    case CovariateLaw::kGaussian:
      return rng.normal();
    case CovariateLaw::kStudentT: {
      const double df = spec.covariate_df;
      return rng.student_t(df) / std::sqrt(df / (df - 2.0));
    }
    case CovariateLaw::kSymmetricPareto: {
      const double a = spec.pareto_tail;
      const double xm = std::sqrt((a - 2.0) / a);  // unit variance
      return rng.pareto_symmetric(a, xm);
    }
  }
  throw std::logic_error("draw_covariate: unknown law");
}

double draw_noise(RngStream& rng, const GeneratorSpec& spec) {
  switch (spec.noise_law) {
    case NoiseLaw::kGaussian:
      return rng.normal();
    case NoiseLaw::kStudentT:
      return rng.student_t(spec.noise_df);
    case NoiseLaw::kLaplace:
      return rng.laplace(1.0 / std::sqrt(2.0));  // unit variance
  }
  throw std::logic_error("draw_noise: unknown law");
}

Mat toeplitz_sqrt(long d, double rho) {
  Mat sigma(d, d);
  for (long i = 0; i < d; ++i)
    for (long j = 0; j < d; ++j) sigma(i, j) = std::pow(rho, std::abs(i - j));
  Eigen::SelfAdjointEigenSolver<Mat> eig(sigma);
  Vec lam = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * lam.asDiagonal() * eig.eigenvectors().transpose();
}

// k distinct indices from {0..n-1}, deterministic partial Fisher-Yates.
std::vector<int> sample_indices(RngStream& rng, long n, long k) {
  std::vector<int> pool(static_cast<size_t>(n));
  std::iota(pool.begin(), pool.end(), 0);
  for (long i = 0; i < k; ++i) {
    long j = i + static_cast<long>(rng.next_u64() % static_cast<std::uint64_t>(n - i));
    std::swap(pool[i], pool[j]);
  }
  std::vector<int> out(pool.begin(), pool.begin() + k);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::string to_string(CovariateLaw law) {
  switch (law) {
    case CovariateLaw::kGaussian: return "gaussian";
    case CovariateLaw::kStudentT: return "student_t";
    case CovariateLaw::kSymmetricPareto: return "symmetric_pareto";
  }
  return "?";
}
std::string to_string(NoiseLaw law) {
  switch (law) {
    case NoiseLaw::kGaussian: return "gaussian";
    case NoiseLaw::kStudentT: return "student_t";
    case NoiseLaw::kLaplace: return "laplace";
  }
  return "?";
}
std::string to_string(Contamination c) {
  switch (c) {
    case Contamination::kNone: return "none";
    case Contamination::kOblivious: return "oblivious";
    case Contamination::kLeverage: return "leverage";
    case Contamination::kAdaptiveResponse: return "adaptive_response";
  }
  return "?";
}

CovariateLaw covariate_law_from_string(const std::string& s) {
  if (s == "gaussian") return CovariateLaw::kGaussian;
  if (s == "student_t") return CovariateLaw::kStudentT;
  if (s == "symmetric_pareto") return CovariateLaw::kSymmetricPareto;
  throw std::invalid_argument("unknown covariate_law: " + s);
}
NoiseLaw noise_law_from_string(const std::string& s) {
  if (s == "gaussian") return NoiseLaw::kGaussian;
  if (s == "student_t") return NoiseLaw::kStudentT;
  if (s == "laplace") return NoiseLaw::kLaplace;
  throw std::invalid_argument("unknown noise_law: " + s);
}
Contamination contamination_from_string(const std::string& s) {
  if (s == "none") return Contamination::kNone;
  if (s == "oblivious") return Contamination::kOblivious;
  if (s == "leverage") return Contamination::kLeverage;
  if (s == "adaptive_response") return Contamination::kAdaptiveResponse;
  throw std::invalid_argument("unknown contamination: " + s);
}

void GeneratorSpec::validate() const {
  check(n >= 1, "GeneratorSpec: n must be >= 1");
  check(d >= 3, "GeneratorSpec: d must be >= 3");
  check(s >= 1 && s <= d, "GeneratorSpec: s must be in [1, d]");
  check(rho >= 0 && rho < 1, "GeneratorSpec: rho must be in [0, 1)");
  check(beta_scale > 0 && std::isfinite(beta_scale),
        "GeneratorSpec: beta_scale must be positive and finite");
  if (covariate_law == CovariateLaw::kStudentT)
    check(covariate_df > 8, "GeneratorSpec: student_t covariates need df > 8");
  if (covariate_law == CovariateLaw::kSymmetricPareto)
    check(pareto_tail > 8, "GeneratorSpec: pareto covariates need tail > 8");
  if (noise_law == NoiseLaw::kStudentT)
    check(noise_df >= 2, "GeneratorSpec: student_t noise needs df >= 2");
  if (contamination == Contamination::kNone) {
    check(o == 0, "GeneratorSpec: o must be 0 without contamination");
  } else {
    check(o >= 0 && o <= n, "GeneratorSpec: o must be in [0, n]");
    check(std::isfinite(magnitude), "GeneratorSpec: magnitude must be finite");
  }
}

GeneratedInstance generate(const GeneratorSpec& spec) {
  spec.validate();
  const long n = spec.n, d = spec.d;

  RngStream global(spec.seed, kGlobalStream);

  // true coefficients: random support, +-beta_scale entries
  std::vector<int> support = sample_indices(global, d, spec.s);
  Vec beta = Vec::Zero(d);
  for (int j : support)
    beta[j] = (global.next_u32() & 1u) ? spec.beta_scale : -spec.beta_scale;

  Mat mix;
  const bool correlated = spec.rho > 0;
  if (correlated) mix = toeplitz_sqrt(d, spec.rho);

  Mat X(n, d);
  Vec xi(n);
  for (long i = 0; i < n; ++i) {
    RngStream rs(spec.seed, 1 + static_cast<std::uint64_t>(i));
    for (long j = 0; j < d; ++j) X(i, j) = draw_covariate(rs, spec);
    if (correlated) X.row(i) = (mix * X.row(i).transpose()).transpose();
    xi[i] = draw_noise(rs, spec);
  }
  Vec y = X * beta + xi;

  std::vector<int> outliers;
  Vec theta = Vec::Zero(spec.o);
  const double sqrt_n = std::sqrt(static_cast<double>(n));

  switch (spec.contamination) {
    case Contamination::kNone:
      break;
    case Contamination::kOblivious: {
      outliers = sample_indices(global, n, spec.o);
      for (size_t k = 0; k < outliers.size(); ++k) {
        const int i = outliers[k];
        RngStream adv(spec.seed, 1 + static_cast<std::uint64_t>(n + i));
        Vec u(d);
        for (long j = 0; j < d; ++j) u[j] = adv.normal();
        const double norm = u.norm();
        if (norm > 0) u *= spec.magnitude / norm;
        X.row(i) += u.transpose();
        const double sign = (adv.next_u32() & 1u) ? 1.0 : -1.0;
        y[i] = X.row(i).dot(beta) + xi[i] + spec.magnitude * sign;
        theta[k] = spec.magnitude * sign / sqrt_n;
      }
      break;
    }
    case Contamination::kLeverage: {
      outliers = sample_indices(global, n, spec.o);
      // direction of the clean least-squares fit, data-dependent on purpose
      Vec dir = Mat(X.transpose() * X)
                    .colPivHouseholderQr()
                    .solve(X.transpose() * y);
      const double norm = dir.norm();
      dir = norm > 0 ? Vec(dir / norm) : Vec(Vec::Unit(d, 0));
      for (size_t k = 0; k < outliers.size(); ++k) {
        const int i = outliers[k];
        RngStream adv(spec.seed, 1 + static_cast<std::uint64_t>(n + i));
        const double sign = (adv.next_u32() & 1u) ? 1.0 : -1.0;
        X.row(i) = (sign * spec.magnitude) * dir.transpose();
        y[i] = -X.row(i).dot(beta);  // flipped response
        theta[k] = (y[i] - X.row(i).dot(beta) - xi[i]) / sqrt_n;
      }
      break;
    }
    case Contamination::kAdaptiveResponse: {
      // adversary picks the samples with the largest noise, then flips and
      // amplifies it: y_i = x_i^T beta - 5 xi_i
      std::vector<int> order(static_cast<size_t>(n));
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return std::fabs(xi[a]) > std::fabs(xi[b]);
      });
      outliers.assign(order.begin(), order.begin() + spec.o);
      std::sort(outliers.begin(), outliers.end());
      for (size_t k = 0; k < outliers.size(); ++k) {
        const int i = outliers[k];
        y[i] = X.row(i).dot(beta) - 5.0 * xi[i];
        theta[k] = -6.0 * xi[i] / sqrt_n;
      }
      break;
    }
  }

  GeneratedInstance out;
  out.theta = theta;
  RegressionInstance& inst = out.instance;
  inst.n = static_cast<int>(n);
  inst.d = static_cast<int>(d);
  inst.X = std::move(X);
  inst.y = std::move(y);

  InstanceTruth truth;
  truth.beta_star = beta;
  truth.support = support;
  truth.outlier_set = outliers;
  std::vector<char> is_out(static_cast<size_t>(n), 0);
  for (int i : outliers) is_out[i] = 1;
  for (long i = 0; i < n; ++i)
    if (!is_out[i]) truth.inlier_set.push_back(static_cast<int>(i));
  inst.truth = std::move(truth);
  inst.validate();
  return out;
}

MomentProfile true_moment_profile(const GeneratorSpec& spec) {
  spec.validate();
  MomentProfile p;
  p.estimated = false;

  double m4 = 0, m8 = 0;  // standardized marginal moments
  switch (spec.covariate_law) {
    case CovariateLaw::kGaussian:
      m4 = 3.0;
      m8 = 105.0;
      break;
    case CovariateLaw::kStudentT: {
      check(spec.rho == 0,
            "true_moment_profile: student_t supports rho = 0 only");
      const double v = spec.covariate_df;
      m4 = 3.0 * (v - 2.0) / (v - 4.0);
      m8 = 105.0 * std::pow(v - 2.0, 3) / ((v - 4.0) * (v - 6.0) * (v - 8.0));
      break;
    }
    case CovariateLaw::kSymmetricPareto: {
      check(spec.rho == 0,
            "true_moment_profile: pareto supports rho = 0 only");
      const double a = spec.pareto_tail;
      const double xm2 = (a - 2.0) / a;
      m4 = a * xm2 * xm2 / (a - 4.0);
      m8 = a * std::pow(xm2, 4) / (a - 8.0);
      break;
    }
  }
  p.sigma_x2 = 1.0;
  p.sigma_x4 = std::pow(m4, 0.25);
  p.sigma_x8 = std::pow(m8, 0.125);
  // Independent coordinates: E(v'x)^4 = 3 + (m4 - 3) sum v_j^4; correlated
  // Gaussian coordinates stay exactly at 3.
  if (spec.covariate_law == CovariateLaw::kGaussian) {
    p.kurtosis_K = std::pow(3.0, 0.25);
  } else {
    const double k4 =
        m4 >= 3.0 ? m4 : 3.0 + (m4 - 3.0) / static_cast<double>(spec.d);
    p.kurtosis_K = std::pow(k4, 0.25);
  }

  if (spec.rho == 0) {
    p.sigma_op = 1.0;
    p.lambda_Sigma = 1.0;
  } else {
    Mat sigma(spec.d, spec.d);
    for (long i = 0; i < spec.d; ++i)
      for (long j = 0; j < spec.d; ++j)
        sigma(i, j) = std::pow(spec.rho, std::abs(i - j));
    Eigen::SelfAdjointEigenSolver<Mat> eig(sigma, Eigen::EigenvaluesOnly);
    p.sigma_op = std::sqrt(eig.eigenvalues().maxCoeff());
    p.lambda_Sigma = std::sqrt(std::max(eig.eigenvalues().minCoeff(), 0.0));
  }

  switch (spec.noise_law) {
    case NoiseLaw::kGaussian:
      p.sigma_noise = std::sqrt(2.0 / M_PI);
      break;
    case NoiseLaw::kStudentT: {
      const double v = spec.noise_df;
      p.sigma_noise = 2.0 * std::sqrt(v) * std::tgamma((v + 1.0) / 2.0) /
                      (std::sqrt(M_PI) * (v - 1.0) * std::tgamma(v / 2.0));
      break;
    }
    case NoiseLaw::kLaplace:
      p.sigma_noise = 1.0 / std::sqrt(2.0);
      break;
  }

  p.validate();
  return p;
}

}  // namespace robreg
