#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "robreg/bench.hpp"
#include "robreg/datagen.hpp"
#include "robreg/io.hpp"
#include "robreg/model_core.hpp"
#include "robreg/pipeline.hpp"
#include "robreg/pruning.hpp"
#include "robreg/tuning.hpp"

namespace {

namespace fs = std::filesystem;
using namespace robreg;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitSuiteFailure = 2;

int resolve_threads(int cli_threads) {
  if (cli_threads > 0) return cli_threads;
  if (const char* env = std::getenv("ROBREG_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void ensure_out_dir(const std::string& out) {
  fs::create_directories(out);
}

void refuse_overwrite(const std::string& path, bool force) {
  if (!force && file_exists(path))
    throw std::invalid_argument(path + " exists; pass --force to overwrite");
}

int cmd_generate(const std::string& config_path, const std::string& out,
                 std::optional<std::uint64_t> seed, bool force) {
  ConfigDoc cfg = ConfigDoc::load(config_path);
  GeneratorSpec spec = spec_from_doc(cfg);
  if (seed) spec.seed = *seed;
  spec.validate();

  ensure_out_dir(out);
  const std::string csv = out + "/instance.csv";
  const std::string meta = out + "/instance.meta";
  refuse_overwrite(csv, force);
  refuse_overwrite(meta, force);

  GeneratedInstance g = generate(spec);
  write_instance_csv(csv, g.instance);
  instance_meta(spec, g).save(meta);
  std::cout << "wrote " << csv << " (" << g.instance.n << " rows, "
            << g.instance.truth->outlier_set.size() << " outliers) and "
            << meta << "\n";
  return kExitOk;
}

// Assembles the estimator configuration for cmd_estimate: oracle profile
// from the config when present, otherwise a plug-in estimate from the
// pruned covariates; explicit [estimator] keys override the derived values.
EstimatorConfig build_config(const ConfigDoc& cfg,
                             const RegressionInstance& inst) {
  const std::string mode = cfg.get_string("estimator", "mode", "theorem");
  const double delta = cfg.get_double("estimator", "delta", 0.1);
  long s = cfg.get_long("estimator", "s",
                        inst.truth ? std::max<long>(inst.sparsity(), 1) : 0);
  if (s <= 0)
    throw std::invalid_argument(
        "estimator.s is required when the instance has no truth metadata");
  long o = cfg.get_long("estimator", "o",
                        inst.truth ? inst.num_outliers() : 0);

  MomentProfile profile;
  if (cfg.has("profile", "sigma_x2")) {
    profile.sigma_x2 = cfg.get_double("profile", "sigma_x2");
    profile.sigma_x4 = cfg.get_double("profile", "sigma_x4");
    profile.sigma_x8 = cfg.get_double("profile", "sigma_x8");
    profile.kurtosis_K = cfg.get_double("profile", "kurtosis_K");
    profile.sigma_noise = cfg.get_double("profile", "sigma_noise");
    profile.sigma_op = cfg.get_double("profile", "sigma_op");
    profile.lambda_Sigma = cfg.get_double("profile", "lambda_Sigma");
    profile.validate();
  } else {
    // plug-in moments from covariates clipped at the same threshold the
    // estimator will use
    Rates r0 = compute_rates(inst.n, inst.d, o, delta, 0.0, 1.0);
    const double tau0 =
        std::pow(r0.r_d * r0.r_d + r0.r_delta * r0.r_delta, -0.25);
    profile = estimate_moment_profile(prune_matrix(inst.X, tau0).X_tilde);
  }

  std::optional<double> beta_l1;
  if (cfg.has("estimator", "beta_star_l1"))
    beta_l1 = cfg.get_double("estimator", "beta_star_l1");
  else if (inst.truth)
    beta_l1 = inst.truth->beta_star.cwiseAbs().sum();

  EstimatorConfig out;
  if (mode == "theorem")
    out = default_config(profile, inst.n, inst.d, s, o, delta, beta_l1);
  else if (mode == "bench")
    out = bench_config(profile, inst.n, inst.d, s, o, delta);
  else
    throw std::invalid_argument("estimator.mode must be theorem or bench");

  // explicit overrides win over the derived defaults
  out.tau_x = cfg.get_double("estimator", "tau_x", out.tau_x);
  out.lambda_star = cfg.get_double("estimator", "lambda_star", out.lambda_star);
  out.epsilon = cfg.get_double("estimator", "epsilon", out.epsilon);
  out.lambda_o = cfg.get_double("estimator", "lambda_o", out.lambda_o);
  out.lambda_s = cfg.get_double("estimator", "lambda_s", out.lambda_s);
  out.r = cfg.get_double("estimator", "r", out.r);
  if (cfg.has("estimator", "tau_suc")) {
    out.tau_suc = cfg.get_double("estimator", "tau_suc");
    out.tau_suc_prime = out.tau_suc / out.c_suc;
  } else {
    // keep tau_suc consistent with a possibly overridden radius
    const double op2 = profile.sigma_op * profile.sigma_op;
    out.tau_suc_prime = op2 * out.r * out.r / (1.0 - out.epsilon);
    out.tau_suc = out.c_suc * out.tau_suc_prime;
  }
  out.validate();
  return out;
}

void config_to_doc(const EstimatorConfig& c, ConfigDoc& doc,
                   const std::string& section) {
  doc.set(section, "mode", c.mode);
  doc.set(section, "n", std::to_string(c.n));
  doc.set(section, "d", std::to_string(c.d));
  doc.set(section, "s", std::to_string(c.s));
  doc.set(section, "o", std::to_string(c.o));
  doc.set(section, "delta", format_double(c.delta));
  doc.set(section, "tau_x", format_double(c.tau_x));
  doc.set(section, "lambda_star", format_double(c.lambda_star));
  doc.set(section, "lambda_star_prime", format_double(c.lambda_star_prime));
  doc.set(section, "tau_suc", format_double(c.tau_suc));
  doc.set(section, "tau_suc_prime", format_double(c.tau_suc_prime));
  doc.set(section, "epsilon", format_double(c.epsilon));
  doc.set(section, "lambda_o", format_double(c.lambda_o));
  doc.set(section, "lambda_s", format_double(c.lambda_s));
  doc.set(section, "r", format_double(c.r));
  doc.set(section, "c_s", format_double(c.c_s));
  doc.set(section, "C_s", format_double(c.C_s));
  doc.set(section, "c_suc", format_double(c.c_suc));
  doc.set(section, "profile_estimated", c.profile_estimated ? "true" : "false");
  doc.set(section, "beta_l1_plugin", c.beta_l1_plugin ? "true" : "false");
  doc.set(section, "flag_tau_x_condition",
          c.flags.tau_x_condition ? "true" : "false");
  doc.set(section, "flag_radius_le_one", c.flags.radius_le_one ? "true" : "false");
  doc.set(section, "flag_epsilon_lt_half",
          c.flags.epsilon_lt_half ? "true" : "false");
  doc.set(section, "flag_remark_premise",
          c.flags.remark_premise ? "true" : "false");
  doc.set(section, "flag_sample_size", c.flags.sample_size ? "true" : "false");
  doc.set(section, "flag_lambda_sigma_le_one",
          c.flags.lambda_sigma_le_one ? "true" : "false");
}

ConfigDoc result_document(const EstimationResult& res, bool include_timings) {
  ConfigDoc doc;
  doc.set("result", "beta_hat", format_vector(res.beta_hat));
  doc.set("result", "failed", res.failed ? "true" : "false");
  if (res.l2_error)
    doc.set("result", "l2_error", format_double(*res.l2_error));
  doc.set("result", "huber_iterations", std::to_string(res.huber.iterations));
  doc.set("result", "huber_converged", res.huber.converged ? "true" : "false");
  doc.set("result", "huber_stationarity",
          format_double(res.huber.stationarity));

  doc.set("weights", "w_hat", format_vector(res.weight_solution.w_hat.w));
  doc.set("weights", "w_prime", format_vector(res.rounded.w_prime));
  doc.set("weights", "zeroed_count", std::to_string(res.rounded.zeroed_count));
  doc.set("weights", "value", format_double(res.weight_solution.value));
  doc.set("weights", "success",
          res.weight_solution.success ? "true" : "false");
  doc.set("weights", "converged",
          res.weight_solution.converged ? "true" : "false");
  doc.set("weights", "iterations",
          std::to_string(res.weight_solution.iterations));
  doc.set("weights", "lower_bound",
          format_double(res.weight_solution.lower_bound));
  doc.set("weights", "certificate_bound",
          format_double(res.weight_solution.certificate_bound));

  config_to_doc(res.config, doc, "config");

  if (include_timings) {
    doc.set("timings", "prune_seconds", format_double(res.timings.prune_seconds));
    doc.set("timings", "weight_seconds",
            format_double(res.timings.weight_seconds));
    doc.set("timings", "rounding_seconds",
            format_double(res.timings.rounding_seconds));
    doc.set("timings", "huber_seconds", format_double(res.timings.huber_seconds));
    doc.set("timings", "total_seconds", format_double(res.timings.total_seconds));
  }
  return doc;
}

int cmd_estimate(const std::string& instance_path,
                 const std::string& config_path, const std::string& out,
                 bool force) {
  ConfigDoc cfg =
      config_path.empty() ? ConfigDoc{} : ConfigDoc::load(config_path);

  LoadedInstance loaded = read_instance_csv(instance_path);
  const std::string meta_path =
      instance_path.size() > 4
          ? instance_path.substr(0, instance_path.size() - 4) + ".meta"
          : instance_path + ".meta";
  if (file_exists(meta_path))
    apply_meta(ConfigDoc::load(meta_path), loaded.instance);

  EstimatorConfig estimator_cfg = build_config(cfg, loaded.instance);

  PipelineControls ctrl;
  ctrl.weight.max_outer_iters =
      static_cast<int>(cfg.get_long("solver", "max_outer_iters", 500));
  ctrl.weight.max_inner_iters =
      static_cast<int>(cfg.get_long("solver", "max_inner_iters", 300));
  ctrl.weight.gap_tolerance = cfg.get_double("solver", "gap_tolerance", -1.0);
  ctrl.weight.early_success_exit =
      cfg.get_bool("solver", "early_success_exit", true);
  ctrl.huber.max_iters =
      static_cast<int>(cfg.get_long("huber", "max_iters", 5000));
  ctrl.huber.tolerance = cfg.get_double("huber", "tolerance", 1e-8);

  EstimationResult res = estimate(loaded.instance, estimator_cfg, ctrl);

  ensure_out_dir(out);
  const std::string result_path = out + "/result.ini";
  refuse_overwrite(result_path, force);
  result_document(res, true).save(result_path);
  std::cout << "wrote " << result_path << " (failed="
            << (res.failed ? "true" : "false");
  if (res.l2_error) std::cout << ", l2_error=" << *res.l2_error;
  std::cout << ")\n";
  return res.failed ? kExitOk : kExitOk;  // failure is flagged, not fatal
}

int cmd_bench(const std::string& suite, const std::string& out,
              std::uint64_t seed, int threads, bool force) {
  ensure_out_dir(out);
  const std::string rows_path = out + "/" + suite + "_rows.csv";
  const std::string summary_path = out + "/" + suite + "_summary.ini";
  refuse_overwrite(rows_path, force);
  refuse_overwrite(summary_path, force);

  ExperimentReport rep = run_suite(suite, seed, threads);
  write_text_file(rows_path, rep.rows_csv());
  rep.summary.save(summary_path);

  int incomplete = 0;
  for (const auto& r : rep.rows)
    if (!std::isfinite(r.l2_error)) ++incomplete;
  std::cout << "wrote " << rows_path << " (" << rep.rows.size() << " rows, "
            << incomplete << " failed) and " << summary_path << "\n";
  std::cout << rep.summary.serialize();
  return kExitOk;
}

int cmd_verify(bool inject_rounding_fault) {
  std::vector<std::string> lines;
  int failures = run_verification(lines, inject_rounding_fault);
  for (const auto& l : lines) std::cout << l << "\n";
  std::cout << (failures == 0 ? "verify: all checks passed\n"
                              : "verify: " + std::to_string(failures) +
                                    " check(s) failed\n");
  return failures == 0 ? kExitOk : kExitSuiteFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "robreg: robust sparse linear regression under heavy tails and "
      "adversarial contamination"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".", instance_path, suite;
  std::uint64_t seed = 0;
  bool seed_set = false, force = false, inject_fault = false;
  int threads = 0;

  auto add_common = [&](CLI::App* sub, bool with_config) {
    if (with_config)
      sub->add_option("--config", config_path, "key-value config file");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "RNG seed override")
        ->each([&](const std::string&) { seed_set = true; });
    sub->add_option("--threads", threads,
                    "worker threads (fallback: ROBREG_THREADS, then cores)");
    sub->add_flag("--force", force, "overwrite existing outputs");
  };

  CLI::App* gen = app.add_subcommand("generate", "write a synthetic instance");
  add_common(gen, true);
  gen->get_option("--config")->required();

  CLI::App* est = app.add_subcommand("estimate", "run the estimator pipeline");
  est->add_option("--instance", instance_path, "instance CSV")->required();
  add_common(est, true);

  CLI::App* bench = app.add_subcommand("bench", "run a benchmark suite");
  bench->add_option("--suite", suite,
                    "n_scaling | o_scaling | breakdown | baselines")
      ->required();
  add_common(bench, false);

  CLI::App* verify = app.add_subcommand("verify", "run the invariant suites");
  add_common(verify, false);
  verify->add_flag("--inject-rounding-fault", inject_fault,
                   "corrupt the rounding threshold (fault-injection hook)")
      ->group("");  // hidden

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed())
      return cmd_generate(config_path, out_dir,
                          seed_set ? std::optional<std::uint64_t>(seed)
                                   : std::nullopt,
                          force);
    if (est->parsed())
      return cmd_estimate(instance_path, config_path, out_dir, force);
    if (bench->parsed())
      return cmd_bench(suite, out_dir, seed_set ? seed : 0,
                       resolve_threads(threads), force);
    if (verify->parsed()) return cmd_verify(inject_fault);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSuiteFailure;
  }
  return kExitValidation;
}
