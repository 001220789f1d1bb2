#include "robreg/bench.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "robreg/datagen.hpp"
#include "robreg/huber.hpp"
#include "robreg/model_core.hpp"
#include "robreg/pruning.hpp"
#include "robreg/rng.hpp"
#include "robreg/rounding.hpp"
#include "robreg/stats.hpp"
#include "robreg/tuning.hpp"
#include "robreg/weight_solver.hpp"

namespace robreg {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kBenchDelta = 0.1;

struct Job {
  GeneratorSpec gen;
  std::string estimator;
};

ReplicateRow make_row(const Job& job) {
  return run_one(job.gen, job.estimator, job.gen.seed);
}

std::vector<ReplicateRow> run_jobs(const std::vector<Job>& jobs, int threads) {
  std::vector<ReplicateRow> rows(jobs.size());
  if (threads < 1) threads = 1;
  threads = std::min<int>(threads, static_cast<int>(jobs.size()));
  std::atomic<size_t> next{0};
  std::vector<std::string> errors(jobs.size());
  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= jobs.size()) break;
      try {
        rows[i] = make_row(jobs[i]);
      } catch (const std::exception& e) {
        // partial failures are recorded, never abort the suite
        rows[i] = ReplicateRow{};
        rows[i].seed = jobs[i].gen.seed;
        rows[i].n = jobs[i].gen.n;
        rows[i].d = jobs[i].gen.d;
        rows[i].s = jobs[i].gen.s;
        rows[i].o = jobs[i].gen.o;
        rows[i].estimator = jobs[i].estimator;
        rows[i].law = to_string(jobs[i].gen.covariate_law);
        rows[i].l2_error = std::numeric_limits<double>::quiet_NaN();
        rows[i].success_flag = false;
        errors[i] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

std::vector<double> cell_errors(const std::vector<ReplicateRow>& rows,
                                const std::string& estimator,
                                const std::string& law, long n, long o) {
  std::vector<double> out;
  for (const auto& r : rows) {
    if (r.estimator == estimator && r.law == law && r.n == n && r.o == o &&
        std::isfinite(r.l2_error))
      out.push_back(r.l2_error);
  }
  return out;
}

}  // namespace

Vec fit_lasso_baseline(const RegressionInstance& instance, double delta) {
  instance.validate();
  const long n = instance.n;
  // spread of the responses; the MAD keeps corrupted rows from inflating it
  std::vector<double> ys(instance.y.data(), instance.y.data() + n);
  const double med = median(ys);
  std::vector<double> dev(ys.size());
  for (size_t i = 0; i < ys.size(); ++i) dev[i] = std::fabs(ys[i] - med);
  const double sigma_hat = std::max(1e-8, 1.4826 * median(dev));

  Rates rates = compute_rates(n, instance.d, 0, delta, 0.0, 1.0);

  HuberObjective obj;
  // scale chosen so every residual stays in the quadratic branch
  obj.lambda_o =
      1e6 * std::max(1.0, instance.y.cwiseAbs().maxCoeff()) / std::sqrt(n);
  obj.lambda_s = 2.0 * sigma_hat * (rates.r_d + rates.r_delta);
  obj.weights = RoundedWeights::uniform(static_cast<int>(n));
  obj.y = instance.y;
  obj.X = instance.X;
  return huber_solve(obj, HuberControls{}).first;
}

ReplicateRow run_one(const GeneratorSpec& gen_in, const std::string& estimator,
                     std::uint64_t seed) {
  GeneratorSpec gen = gen_in;
  gen.seed = seed;
  const auto t0 = Clock::now();

  GeneratedInstance gi = generate(gen);
  const RegressionInstance& inst = gi.instance;
  const Vec& beta_star = inst.truth->beta_star;

  ReplicateRow row;
  row.seed = seed;
  row.n = gen.n;
  row.d = gen.d;
  row.s = gen.s;
  row.o = gen.o;
  row.estimator = estimator;
  row.law = to_string(gen.covariate_law);

  MomentProfile profile = true_moment_profile(gen);
  if (estimator == "robust") {
    EstimatorConfig cfg = bench_config(profile, gen.n, gen.d, gen.s, gen.o,
                                       kBenchDelta);
    EstimationResult res = estimate(inst, cfg);
    row.l2_error = *res.l2_error;
    row.success_flag = !res.failed;
  } else if (estimator == "lasso") {
    Vec beta = fit_lasso_baseline(inst, kBenchDelta);
    row.l2_error = (beta - beta_star).norm();
    row.success_flag = true;
  } else if (estimator == "huber_lasso_unweighted") {
    EstimatorConfig cfg = bench_config(profile, gen.n, gen.d, gen.s, gen.o,
                                       kBenchDelta);
    HuberObjective obj;  // pruning skipped, weights forced uniform
    obj.lambda_o = cfg.lambda_o;
    obj.lambda_s = cfg.lambda_s;
    obj.weights = RoundedWeights::uniform(static_cast<int>(gen.n));
    obj.y = inst.y;
    obj.X = inst.X;
    auto [beta, diag] = huber_solve(obj, HuberControls{});
    row.l2_error = (beta - beta_star).norm();
    row.success_flag = diag.converged;
  } else {
    throw std::invalid_argument("unknown estimator: " + estimator);
  }

  row.wall_time = std::chrono::duration<double>(Clock::now() - t0).count();
  return row;
}

std::string ExperimentReport::rows_csv() const {
  std::string out =
      "seed,n,d,s,o,estimator,law,l2_error,success_flag,wall_time\n";
  for (const auto& r : rows) {
    out += std::to_string(r.seed) + "," + std::to_string(r.n) + "," +
           std::to_string(r.d) + "," + std::to_string(r.s) + "," +
           std::to_string(r.o) + "," + r.estimator + "," + r.law + "," +
           format_double(r.l2_error) + "," + (r.success_flag ? "1" : "0") +
           "," + format_double(r.wall_time) + "\n";
  }
  return out;
}

std::vector<ReplicateRow> ExperimentReport::parse_rows_csv(
    const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("rows csv: missing header");
  std::vector<ReplicateRow> rows;
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::string tok;
    std::vector<std::string> cells;
    while (std::getline(ls, tok, ',')) cells.push_back(tok);
    if (cells.size() != 10)
      throw std::invalid_argument("rows csv: bad field count at line " +
                                  std::to_string(lineno));
    ReplicateRow r;
    r.seed = std::stoull(cells[0]);
    r.n = std::stol(cells[1]);
    r.d = std::stol(cells[2]);
    r.s = std::stol(cells[3]);
    r.o = std::stol(cells[4]);
    r.estimator = cells[5];
    r.law = cells[6];
    r.l2_error = parse_double(cells[7]);
    r.success_flag = cells[8] == "1";
    r.wall_time = parse_double(cells[9]);
    rows.push_back(std::move(r));
  }
  return rows;
}

namespace {

GeneratorSpec scaling_spec(CovariateLaw law, long n, long d, long s) {
  GeneratorSpec g;
  g.n = n;
  g.d = d;
  g.s = s;
  g.covariate_law = law;
  g.covariate_df = 9;
  return g;
}

GeneratorSpec leverage_spec(long n, long d, long s, long o, double magnitude) {
  GeneratorSpec g;
  g.n = n;
  g.d = d;
  g.s = s;
  if (o > 0) {
    g.contamination = Contamination::kLeverage;
    g.o = o;
    g.magnitude = magnitude;
  }
  return g;
}

}  // namespace

ExperimentReport run_suite(const std::string& suite, std::uint64_t seed,
                           int threads) {
  ExperimentReport rep;
  rep.summary.set("suite", "name", suite);
  rep.summary.set("suite", "seed", std::to_string(seed));

  std::vector<Job> jobs;
  auto push_cell = [&](const GeneratorSpec& gen, const std::string& estimator,
                       int replicates, std::uint64_t cell_id) {
    for (int rep_i = 0; rep_i < replicates; ++rep_i) {
      Job j;
      j.gen = gen;
      j.gen.seed = derive_seed(seed, cell_id, static_cast<std::uint64_t>(rep_i));
      j.estimator = estimator;
      jobs.push_back(std::move(j));
    }
  };

  if (suite == "n_scaling") {
    const int reps = 30;
    const std::vector<long> ns = {1000, 2000, 4000, 8000};
    const std::vector<CovariateLaw> laws = {CovariateLaw::kGaussian,
                                            CovariateLaw::kStudentT};
    std::uint64_t cell = 0;
    for (auto law : laws)
      for (long n : ns) push_cell(scaling_spec(law, n, 200, 5), "robust", reps, cell++);
    rep.rows = run_jobs(jobs, threads);
    rep.summary.set("suite", "replicates", std::to_string(reps));
    for (auto law : laws) {
      std::vector<double> lx, ly;
      for (long n : ns) {
        auto errs = cell_errors(rep.rows, "robust", to_string(law), n, 0);
        if (errs.empty()) continue;
        const double med = median(errs);
        rep.summary.set("medians", to_string(law) + "_n" + std::to_string(n),
                        format_double(med));
        lx.push_back(std::log(static_cast<double>(n)));
        ly.push_back(std::log(med));
      }
      if (lx.size() >= 4) {
        LineFit f = fit_line(lx, ly);
        rep.summary.set("fits", "slope_" + to_string(law), format_double(f.slope));
        rep.summary.set("fits", "r2_" + to_string(law), format_double(f.r2));
      }
    }
  } else if (suite == "o_scaling" || suite == "breakdown") {
    const bool breakdown = suite == "breakdown";
    const int reps = breakdown ? 10 : 30;
    const long n = breakdown ? 400 : 2000;
    const long d = breakdown ? 20 : 100;
    const std::vector<long> os =
        breakdown ? std::vector<long>{0, 40, 80, 120, 160, 200}
                  : std::vector<long>{0, 20, 50, 100};
    const std::vector<std::string> estimators =
        breakdown ? std::vector<std::string>{"robust"}
                  : std::vector<std::string>{"robust", "lasso"};
    const long s = breakdown ? 3 : 5;
    std::uint64_t cell = 0;
    for (long o : os)
      for (const auto& est : estimators)
        push_cell(leverage_spec(n, d, s, o, 1e3), est, reps, cell++);
    rep.rows = run_jobs(jobs, threads);
    rep.summary.set("suite", "replicates", std::to_string(reps));

    std::vector<double> ro, med_robust;
    for (long o : os) {
      for (const auto& est : estimators) {
        auto errs = cell_errors(rep.rows, est, "gaussian", n, o);
        if (errs.empty()) continue;
        const double med = median(errs);
        rep.summary.set("medians", est + "_o" + std::to_string(o),
                        format_double(med));
        if (est == "robust") {
          ro.push_back(std::sqrt(static_cast<double>(o) / n));
          med_robust.push_back(med);
        }
      }
    }
    if (!breakdown && med_robust.size() >= 4) {
      LineFit f = fit_line(ro, med_robust);
      rep.summary.set("fits", "robust_vs_sqrt_o_n_slope", format_double(f.slope));
      rep.summary.set("fits", "robust_vs_sqrt_o_n_intercept",
                      format_double(f.intercept));
      rep.summary.set("fits", "robust_vs_sqrt_o_n_r2", format_double(f.r2));
      const double at0 = med_robust.front();
      const double at_max = med_robust.back();
      rep.summary.set("fits", "robust_error_ratio_omax_over_o0",
                      format_double(at_max / at0));
      auto lasso_at_max =
          cell_errors(rep.rows, "lasso", "gaussian", n, os.back());
      if (!lasso_at_max.empty())
        rep.summary.set("fits", "lasso_over_robust_at_omax",
                        format_double(median(lasso_at_max) / at_max));
    }
  } else if (suite == "baselines") {
    const int reps = 30;
    const long n = 2000, d = 100;
    std::uint64_t cell = 0;
    for (const auto& est :
         {"robust", "lasso", "huber_lasso_unweighted"})
      push_cell(scaling_spec(CovariateLaw::kGaussian, n, d, 5), est, reps,
                cell++);
    rep.rows = run_jobs(jobs, threads);
    rep.summary.set("suite", "replicates", std::to_string(reps));
    double med_robust = 0, med_unweighted = 0;
    for (const auto& est :
         {"robust", "lasso", "huber_lasso_unweighted"}) {
      auto errs = cell_errors(rep.rows, est, "gaussian", n, 0);
      if (errs.empty()) continue;
      const double med = median(errs);
      rep.summary.set("medians", est, format_double(med));
      if (std::string(est) == "robust") med_robust = med;
      if (std::string(est) == "huber_lasso_unweighted") med_unweighted = med;
    }
    if (med_robust > 0)
      rep.summary.set("fits", "unweighted_over_robust",
                      format_double(med_unweighted / med_robust));
  } else {
    throw std::invalid_argument(
        "unknown suite: " + suite +
        " (expected n_scaling, o_scaling, breakdown, baselines)");
  }
  return rep;
}

// ---------------------------------------------------------------------------
// verification suites
// ---------------------------------------------------------------------------

namespace {

struct Check {
  std::string name;
  bool pass = false;
  std::string details;
};

Vec random_vec(RngStream& rng, long n, double scale) {
  Vec v(n);
  for (long i = 0; i < n; ++i) v[i] = scale * rng.normal();
  return v;
}

Mat random_symmetric(RngStream& rng, long d, double scale) {
  Mat a(d, d);
  for (long i = 0; i < d; ++i)
    for (long j = 0; j < d; ++j) a(i, j) = scale * rng.normal();
  return 0.5 * (a + a.transpose());
}

Check check_rounding_discretization(bool corrupt) {
  RngStream rng(2024, 7);
  long violations = 0, total = 0;
  const std::vector<int> ns = {5, 50, 500};
  for (int n : ns) {
    const std::vector<double> epss = {1.0 / n, 0.1, 0.3, 0.49};
    for (double eps : epss) {
      const int trials = 10000 / static_cast<int>(ns.size() * epss.size());
      for (int t = 0; t < trials; ++t) {
        Vec raw = random_vec(rng, n, 1.0).cwiseAbs();
        TruncatedSimplexPoint w = project_truncated_simplex(raw, eps);
        RoundedWeights r =
            corrupt ? round_weights_with_threshold(w, 1.5 / n)
                    : round_weights(w);
        ++total;
        if (r.zeroed_count > 2.0 * eps * n) ++violations;
      }
    }
  }
  Check c;
  c.name = "rounding: |I_<| <= 2 n eps";
  c.pass = violations == 0;
  c.details = std::to_string(total) + " points, " +
              std::to_string(violations) + " violations";
  return c;
}

Check check_rounding_doubling() {
  RngStream rng(2024, 8);
  long bad = 0, total = 0;
  for (int t = 0; t < 2000; ++t) {
    int n = 4 + static_cast<int>(rng.next_u32() % 60);
    double eps = 0.02 + 0.45 * rng.uniform();
    TruncatedSimplexPoint w =
        project_truncated_simplex(random_vec(rng, n, 1.0).cwiseAbs(), eps);
    RoundedWeights r = round_weights(w);
    for (int i = 0; i < n; ++i) {
      if (r.w_prime[i] == 0.0) continue;
      ++total;
      if (r.w_prime[i] > 2.0 * w.w[i] + 1e-15) ++bad;
    }
  }
  Check c;
  c.name = "rounding: retained implies w' <= 2 w";
  c.pass = bad == 0;
  c.details = std::to_string(total) + " retained entries, " +
              std::to_string(bad) + " violations";
  return c;
}

Check check_prop2_concentration() {
  const long n = 500, d = 10;
  const double delta = 0.1;
  const int reps = 200;
  GeneratorSpec gen;
  gen.n = n;
  gen.d = d;
  gen.s = 3;
  MomentProfile profile = true_moment_profile(gen);
  Rates rates = compute_rates(n, d, 0, delta, 0.0, profile.sigma_x2);
  const double tau_x =
      std::pow(rates.r_d * rates.r_d + rates.r_delta * rates.r_delta, -0.25);

  // fixed rank-1 direction mixing all coordinates
  Vec v = Vec::Ones(d);
  v /= v.norm();
  Mat M = v * v.transpose();  // trace 1 = r^2 with r = 1
  const double m_l1 = M.cwiseAbs().sum();
  const double s4_2 = profile.sigma_x4 * profile.sigma_x4;
  const double bound =
      (std::sqrt(2.0) * s4_2 * (rates.r_d + rates.r_delta) +
       tau_x * tau_x *
           (rates.r_d * rates.r_d + rates.r_delta * rates.r_delta) +
       2.0 * s4_2 * s4_2 / (tau_x * tau_x)) *
          m_l1 +
      profile.sigma_op * profile.sigma_op * 1.0;

  int holds = 0;
  for (int r = 0; r < reps; ++r) {
    gen.seed = derive_seed(99, 0, static_cast<std::uint64_t>(r));
    GeneratedInstance gi = generate(gen);
    PrunedMatrix pruned = prune_matrix(gi.instance.X, tau_x);
    const double lhs =
        (pruned.X_tilde * v).squaredNorm() / static_cast<double>(n);
    if (lhs <= bound) ++holds;
  }
  Check c;
  c.name = "weights: pruned-Gram concentration bound";
  c.pass = holds >= 170;
  c.details = std::to_string(holds) + "/" + std::to_string(reps) + " hold";
  return c;
}

Check check_pruning() {
  RngStream rng(2024, 9);
  long bad = 0;
  for (int t = 0; t < 200; ++t) {
    long n = 2 + rng.next_u32() % 20, d = 1 + rng.next_u32() % 20;
    Mat x(n, d);
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < d; ++j) x(i, j) = 10.0 * rng.normal();
    double tau = 0.1 + 3.0 * rng.uniform();
    PrunedMatrix p = prune_matrix(x, tau);
    if ((p.X_tilde.cwiseAbs().array() > tau).any()) ++bad;
    PrunedMatrix pp = prune_matrix(p.X_tilde, tau);
    if (pp.X_tilde != p.X_tilde) ++bad;
    PrunedMatrix wider = prune_matrix(x, tau * 2);
    if (((wider.X_tilde.cwiseAbs() - p.X_tilde.cwiseAbs()).array() < -1e-15)
            .any())
      ++bad;
  }
  Check c;
  c.name = "pruning: box, idempotence, monotonicity";
  c.pass = bad == 0;
  c.details = "200 random matrices, " + std::to_string(bad) + " violations";
  return c;
}

Check check_projections() {
  RngStream rng(2024, 10);
  long bad = 0;
  for (int t = 0; t < 300; ++t) {
    long n = 2 + rng.next_u32() % 30;
    double eps = 0.6 * rng.uniform();
    TruncatedSimplexPoint w =
        project_truncated_simplex(random_vec(rng, n, 2.0), eps);
    try {
      w.validate();
    } catch (const std::exception&) {
      ++bad;
    }
    TruncatedSimplexPoint again = project_truncated_simplex(w.w, eps);
    if ((again.w - w.w).cwiseAbs().maxCoeff() > 1e-9) ++bad;
  }
  for (int t = 0; t < 200; ++t) {
    long d = 2 + rng.next_u32() % 6;
    Mat a = random_symmetric(rng, d, 2.0);
    double budget = 0.5 + 2.0 * rng.uniform();
    SpectrahedronPoint m = project_spectrahedron(a, budget);
    try {
      m.validate();
    } catch (const std::exception&) {
      ++bad;
    }
    Mat back = project_spectrahedron(m.M, budget).M;
    if ((back - m.M).cwiseAbs().maxCoeff() > 1e-8) ++bad;
  }
  Check c;
  c.name = "projections: feasibility and idempotence";
  c.pass = bad == 0;
  c.details = "500 random inputs, " + std::to_string(bad) + " violations";
  return c;
}

Check check_weak_duality() {
  RngStream rng(2024, 11);
  long bad = 0, total = 0;
  SolverControls ctrl;
  for (int t = 0; t < 30; ++t) {
    long d = 2 + rng.next_u32() % 4;
    Mat s = random_symmetric(rng, d, 1.5);
    double lam = (t % 3 == 0) ? 0.0 : rng.uniform();
    double budget = 0.5 + rng.uniform();
    InnerMaxResult res = inner_max(s, lam, budget, ctrl);
    for (int k = 0; k < 10; ++k) {
      Mat u = random_symmetric(rng, d, 1.0);
      u = u.cwiseMax(-lam).cwiseMin(lam);
      ++total;
      if (res.value > dual_certificate_bound(s, u, lam, budget) + 1e-9) ++bad;
    }
  }
  Check c;
  c.name = "weights: weak duality of the inner maximization";
  c.pass = bad == 0;
  c.details = std::to_string(total) + " certificates, " + std::to_string(bad) +
              " violations";
  return c;
}

Check check_huber_analytics() {
  RngStream rng(2024, 12);
  long bad = 0;
  // gradient of the smooth part against central differences
  for (int t = 0; t < 40; ++t) {
    const long n = 12, d = 4;
    HuberObjective obj;
    obj.lambda_o = 0.5 + rng.uniform();
    obj.lambda_s = 0.0;
    obj.weights = RoundedWeights::uniform(n);
    Mat x(n, d);
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < d; ++j) x(i, j) = rng.normal();
    obj.X = x;
    obj.y = random_vec(rng, n, 1.0);
    Vec beta = random_vec(rng, d, 0.5);
    Vec g = smooth_gradient(beta, obj);
    const double h = 1e-6;
    for (long j = 0; j < d; ++j) {
      Vec bp = beta, bm = beta;
      bp[j] += h;
      bm[j] -= h;
      double fd =
          (objective_value(bp, obj) - objective_value(bm, obj)) / (2 * h);
      if (std::fabs(fd - g[j]) > 1e-5 * std::max(1.0, std::fabs(g[j]))) ++bad;
    }
  }
  Check c;
  c.name = "huber: analytic gradient matches finite differences";
  c.pass = bad == 0;
  c.details = "160 coordinates, " + std::to_string(bad) + " mismatches";
  return c;
}

Check check_weight_optimality_sanity() {
  RngStream rng(2024, 13);
  long bad = 0;
  SolverControls ctrl;
  ctrl.early_success_exit = false;
  ctrl.max_outer_iters = 120;
  for (int t = 0; t < 10; ++t) {
    const long n = 12, d = 4;
    Mat x(n, d);
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < d; ++j) x(i, j) = rng.normal();
    x.row(0) *= 8.0;  // one heavy row to reweight
    PrunedMatrix pruned = prune_matrix(x, 10.0);
    WeightSolution sol = compute_weight(pruned, 0.1, 0.0, 0.2, 1.0, ctrl);
    if (sol.value > sol.uniform_value + 1e-6) ++bad;
  }
  Check c;
  c.name = "weights: attained value never worse than uniform";
  c.pass = bad == 0;
  c.details = "10 instances, " + std::to_string(bad) + " violations";
  return c;
}

Check check_datagen_bookkeeping() {
  long bad = 0;
  for (int t = 0; t < 5; ++t) {
    GeneratorSpec clean;
    clean.n = 200;
    clean.d = 8;
    clean.s = 3;
    clean.seed = 500 + t;
    GeneratorSpec dirty = clean;
    dirty.contamination = Contamination::kLeverage;
    dirty.o = 20;
    dirty.magnitude = 100;
    GeneratedInstance a = generate(clean);
    GeneratedInstance b = generate(dirty);
    if (static_cast<long>(b.instance.truth->outlier_set.size()) != dirty.o)
      ++bad;
    for (int i : b.instance.truth->inlier_set) {
      if (a.instance.X.row(i) != b.instance.X.row(i)) ++bad;
      if (a.instance.y[i] != b.instance.y[i]) ++bad;
    }
  }
  Check c;
  c.name = "datagen: |O| = o and inliers bit-identical";
  c.pass = bad == 0;
  c.details = std::to_string(bad) + " violations";
  return c;
}

Check check_tuning_relations() {
  GeneratorSpec gen;
  gen.n = 2000;
  gen.d = 50;
  gen.s = 5;
  MomentProfile profile = true_moment_profile(gen);
  long bad = 0;
  double prev_lambda_s = -1;
  for (long o : {0l, 20l, 50l, 100l, 200l}) {
    EstimatorConfig cfg = default_config(profile, 2000, 50, 5, o, 0.1);
    if (std::fabs(cfg.tau_suc / cfg.tau_suc_prime - cfg.c_suc) > 1e-9) ++bad;
    if (cfg.lambda_s < prev_lambda_s) ++bad;  // monotone in o via r_o and eps
    prev_lambda_s = cfg.lambda_s;
  }
  Check c;
  c.name = "tuning: tau_suc ratio exact and lambda_s monotone in o";
  c.pass = bad == 0;
  c.details = std::to_string(bad) + " violations";
  return c;
}

}  // namespace

int run_verification(std::vector<std::string>& lines, bool corrupt_rounding) {
  std::vector<Check> checks;
  checks.push_back(check_rounding_discretization(corrupt_rounding));
  checks.push_back(check_rounding_doubling());
  checks.push_back(check_prop2_concentration());
  checks.push_back(check_pruning());
  checks.push_back(check_projections());
  checks.push_back(check_weak_duality());
  checks.push_back(check_huber_analytics());
  checks.push_back(check_weight_optimality_sanity());
  checks.push_back(check_datagen_bookkeeping());
  checks.push_back(check_tuning_relations());

  int failures = 0;
  for (const Check& c : checks) {
    lines.push_back(std::string(c.pass ? "[PASS] " : "[FAIL] ") + c.name +
                    " (" + c.details + ")");
    if (!c.pass) ++failures;
  }
  return failures;
}

}  // namespace robreg
