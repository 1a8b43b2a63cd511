#include "covkit/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

#include "covkit/boundslab.hpp"
#include "covkit/matcore.hpp"
#include "covkit/matrix_io.hpp"
#include "covkit/models.hpp"
#include "covkit/riskbench.hpp"
#include "covkit/rng.hpp"
#include "covkit/version.hpp"

namespace covkit::cli {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitPartial = 4;

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw InvalidInput(fmt::format("cannot open config '{}'", path));
  try {
    json cfg = json::parse(in);
    if (!cfg.is_object()) throw InvalidInput("config root must be a JSON object");
    return cfg;
  } catch (const json::exception& err) {
    throw InvalidInput(fmt::format("config '{}': {}", path, err.what()));
  }
}

// Flags (and env values) win; otherwise a config key of the same name;
// otherwise the compiled default already in `value`.
template <typename T>
void merge_option(const CLI::Option* opt, const json& cfg, const char* key,
                  T& value) {
  if (opt != nullptr && opt->count() > 0) return;
  if (!cfg.contains(key)) return;
  try {
    value = cfg.at(key).get<T>();
  } catch (const json::exception& err) {
    throw InvalidInput(fmt::format("config key '{}': {}", key, err.what()));
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InvalidInput(fmt::format("cannot open '{}' for writing", path));
  out << text;
  if (!out) throw InvalidInput(fmt::format("write to '{}' failed", path));
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty())
    std::cout << text;
  else
    write_text_file(out_path, text);
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

// Short form for grid coordinates (alpha, rho); full precision is for
// estimated quantities.
std::string format_short(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", value);
  return buf;
}

struct CommonArgs {
  std::string config_path;
  std::uint64_t seed = 1;
  int jobs = 0;  // logical cores
  std::string out;
  std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonArgs& args, CLI::Option*& seed_opt,
                CLI::Option*& jobs_opt, CLI::Option*& out_opt,
                CLI::Option*& format_opt) {
  cmd->add_option("--config", args.config_path, "JSON config file")
      ->envname("COVKIT_CONFIG");
  seed_opt = cmd->add_option("--seed", args.seed, "base RNG seed")
                 ->envname("COVKIT_SEED");
  jobs_opt = cmd->add_option("--jobs", args.jobs,
                             "worker threads (0 = logical cores)")
                 ->envname("COVKIT_JOBS");
  out_opt = cmd->add_option("--out", args.out, "output path")
                ->envname("COVKIT_OUT");
  format_opt = cmd->add_option("--format", args.format, "csv or json")
                   ->envname("COVKIT_FORMAT");
}

json manifest_skeleton(const std::string& command, const json& resolved) {
  json m;
  m["schema_version"] = kSchemaVersion;
  m["toolkit_version"] = kVersion;
  m["command"] = command;
  m["rng_algorithm"] = kRngAlgorithm;
  m["config"] = resolved;
  return m;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  CommonArgs common;
  std::vector<int> p_list;
  std::vector<int> n_list;
  std::vector<double> alpha_list;
  std::vector<std::string> estimators{"band", "taper"};
  double rho = 0.6;
  int reps = 100;
  std::string norm = "operator";
};

std::vector<BenchCell> build_grid(const SimulateArgs& args) {
  if (args.p_list.empty() || args.n_list.empty() || args.alpha_list.empty())
    throw InvalidInput("simulate needs nonempty p, n, and alpha lists");
  if (args.estimators.empty()) throw InvalidInput("simulate needs estimators");
  const Norm norm = norm_from_string(args.norm);
  std::vector<BenchCell> cells;
  for (int p : args.p_list)
    for (int n : args.n_list)
      for (double alpha : args.alpha_list)
        for (const std::string& estimator : args.estimators) {
          BenchCell cell;
          cell.p = p;
          cell.n = n;
          cell.alpha = alpha;
          cell.rho = args.rho;
          cell.estimator = estimator_kind_from_string(estimator);
          cell.norm = norm;
          cell.reps = args.reps;
          cell.seed = args.common.seed;
          cells.push_back(cell);
        }
  return cells;
}

std::string render_csv(const std::vector<BenchCell>& cells,
                       const std::vector<CellOutcome>& outcomes) {
  std::string text =
      "p,n,alpha,rho,estimator,norm,k_used,mean_error,std_error,reps,seed,error\n";
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const BenchCell& cell = cells[i];
    const CellOutcome& outcome = outcomes[i];
    if (outcome.report) {
      const RiskReport& r = *outcome.report;
      text += fmt::format("{},{},{},{},{},{},{},{},{},{},{},\n", cell.p, cell.n,
                          format_short(cell.alpha), format_short(cell.rho),
                          to_string(cell.estimator), to_string(cell.norm),
                          r.k_used, format_full(r.mean_error),
                          format_full(r.std_error), cell.reps, cell.seed);
    } else {
      text += fmt::format("{},{},{},{},{},{},,,,{},{},{}\n", cell.p, cell.n,
                          format_short(cell.alpha), format_short(cell.rho),
                          to_string(cell.estimator), to_string(cell.norm),
                          cell.reps, cell.seed, csv_quote(outcome.error));
    }
  }
  return text;
}

json record_for(const BenchCell& cell, const CellOutcome& outcome) {
  json rec;
  rec["p"] = cell.p;
  rec["n"] = cell.n;
  rec["alpha"] = cell.alpha;
  rec["rho"] = cell.rho;
  rec["estimator"] = to_string(cell.estimator);
  rec["norm"] = to_string(cell.norm);
  rec["reps"] = cell.reps;
  rec["seed"] = cell.seed;
  if (outcome.report) {
    rec["k_used"] = outcome.report->k_used;
    rec["mean_error"] = outcome.report->mean_error;
    rec["std_error"] = outcome.report->std_error;
    rec["error"] = nullptr;
  } else {
    rec["k_used"] = nullptr;
    rec["mean_error"] = nullptr;
    rec["std_error"] = nullptr;
    rec["error"] = outcome.error;
  }
  return rec;
}

int run_simulate(const SimulateArgs& args) {
  const auto start = std::chrono::steady_clock::now();
  if (args.common.out.empty()) throw InvalidInput("simulate requires --out");
  if (args.common.format != "csv" && args.common.format != "json")
    throw InvalidInput(fmt::format("unknown format '{}'", args.common.format));

  const std::vector<BenchCell> cells = build_grid(args);
  BenchOptions options;
  options.jobs = args.common.jobs;
  const std::vector<CellOutcome> outcomes = run_grid(cells, options);

  std::string rendered;
  if (args.common.format == "csv") {
    rendered = render_csv(cells, outcomes);
  } else {
    json doc;
    doc["schema_version"] = kSchemaVersion;
    json records = json::array();
    for (std::size_t i = 0; i < outcomes.size(); ++i)
      records.push_back(record_for(cells[i], outcomes[i]));
    doc["records"] = std::move(records);
    rendered = doc.dump(2) + "\n";
  }
  write_text_file(args.common.out, rendered);

  json resolved;
  resolved["seed"] = args.common.seed;
  resolved["jobs"] = args.common.jobs;
  resolved["out"] = args.common.out;
  resolved["format"] = args.common.format;
  resolved["p"] = args.p_list;
  resolved["n"] = args.n_list;
  resolved["alpha"] = args.alpha_list;
  resolved["estimators"] = args.estimators;
  resolved["rho"] = args.rho;
  resolved["reps"] = args.reps;
  resolved["norm"] = args.norm;
  json manifest = manifest_skeleton("simulate", resolved);
  json manifest_cells = json::array();
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    json mc;
    mc["p"] = cells[i].p;
    mc["n"] = cells[i].n;
    mc["alpha"] = cells[i].alpha;
    mc["estimator"] = to_string(cells[i].estimator);
    mc["k_used"] =
        outcomes[i].report ? json(outcomes[i].report->k_used) : json(nullptr);
    mc["ok"] = outcomes[i].report.has_value();
    manifest_cells.push_back(std::move(mc));
  }
  manifest["cells"] = std::move(manifest_cells);
  manifest["wall_clock_seconds"] = seconds_since(start);
  write_text_file(args.common.out + ".manifest.json", manifest.dump(2) + "\n");

  int failures = 0;
  for (const CellOutcome& outcome : outcomes)
    if (!outcome.report) ++failures;
  if (failures > 0) {
    std::cerr << fmt::format("{} of {} cells failed\n", failures, outcomes.size());
    return kExitPartial;
  }
  std::cout << fmt::format("wrote {} ({} cells)\n", args.common.out,
                           outcomes.size());
  return kExitOk;
}

// ---------------------------------------------------------------- estimate

struct EstimateArgs {
  CommonArgs common;
  std::string input;
  std::string estimator = "mle";
  int k = 0;  // 0 = select by rule
  double alpha = 0.5;
  std::string loss = "operator";
  double eps = 1e-3;
  std::string psd_out;
  std::string inverse_out;
};

int run_estimate(const EstimateArgs& args) {
  const auto start = std::chrono::steady_clock::now();
  if (args.input.empty()) throw InvalidInput("estimate requires --input");
  if (args.common.out.empty()) throw InvalidInput("estimate requires --out");

  const SampleSet samples = read_samples_file(args.input);
  const EstimatorKind kind = estimator_kind_from_string(args.estimator);

  int k_used = 0;
  if (kind == EstimatorKind::Taper || kind == EstimatorKind::Band) {
    if (args.k > 0) {
      k_used = args.k;
    } else {
      BandwidthRule rule;
      rule.estimator = kind;
      rule.alpha = args.alpha;
      rule.loss =
          args.loss == "frobenius" ? Loss::Frobenius : Loss::Operator;
      if (args.loss != "frobenius" && args.loss != "operator")
        throw InvalidInput(fmt::format("unknown loss '{}'", args.loss));
      k_used = select_bandwidth(rule, samples.n(), samples.p());
    }
  }

  SymmetricMatrix estimate = [&] {
    switch (kind) {
      case EstimatorKind::Taper: return taper_estimate(samples, k_used);
      case EstimatorKind::Band: return band_estimate(samples, k_used);
      case EstimatorKind::Sample: return sample_covariance(samples);
      case EstimatorKind::Mle:
      default: return mle_covariance(samples);
    }
  }();

  write_matrix_file(args.common.out, estimate);
  if (!args.psd_out.empty()) write_matrix_file(args.psd_out, psd_project(estimate));
  if (!args.inverse_out.empty())
    write_matrix_file(args.inverse_out, floored_inverse(estimate, args.eps));

  json resolved;
  resolved["input"] = args.input;
  resolved["estimator"] = args.estimator;
  resolved["k"] = args.k;
  resolved["alpha"] = args.alpha;
  resolved["loss"] = args.loss;
  resolved["eps"] = args.eps;
  resolved["out"] = args.common.out;
  resolved["psd_out"] = args.psd_out;
  resolved["inverse_out"] = args.inverse_out;
  json manifest = manifest_skeleton("estimate", resolved);
  manifest["n"] = samples.n();
  manifest["p"] = samples.p();
  manifest["k_used"] = k_used;
  manifest["wall_clock_seconds"] = seconds_since(start);
  write_text_file(args.common.out + ".manifest.json", manifest.dump(2) + "\n");

  std::cout << fmt::format("wrote {} (p={}, n={}, estimator={}, k={})\n",
                           args.common.out, samples.p(), samples.n(),
                           args.estimator, k_used);
  return kExitOk;
}

// ---------------------------------------------------------------- bounds

struct BoundsArgs {
  CommonArgs common;
  std::string family;
  int n = 0;
  int p = 0;
  double alpha = 0.5;
  double tau = 0.5;
  int k = 0;
  double r_min = -1.0;
  double affinity = -1.0;
};

json bound_record(const AssembledBound& b) {
  json rec;
  rec["family"] = b.family;
  rec["loss"] = b.loss;
  rec["n"] = b.n;
  rec["p"] = b.p;
  rec["alpha"] = b.alpha;
  rec["tau"] = b.tau;
  rec["k"] = b.k;
  rec["a_scale"] = b.a_scale;
  rec["separation_per_bit"] = b.separation_per_bit;
  rec["hypercube_dim"] = b.hypercube_dim;
  rec["affinity_floor"] = b.affinity_floor;
  if (b.family == "f12") rec["chi_square"] = b.chi_square;
  rec["bound"] = b.bound;
  return rec;
}

int run_bounds(const BoundsArgs& args) {
  if (args.family.empty()) throw InvalidInput("bounds requires --family");

  json rec;
  if (args.family == "f11") {
    rec = bound_record(assouad_f11_bound(args.n, args.p, args.alpha, args.tau));
  } else if (args.family == "g2") {
    rec = bound_record(
        assouad_g2_bound(args.n, args.p, args.alpha, args.tau, args.k));
  } else if (args.family == "fstar") {
    rec = bound_record(assouad_fstar_bound(args.n, args.p, args.tau));
  } else if (args.family == "f12") {
    rec = bound_record(lecam_f12_bound(args.n, args.p, args.tau));
  } else if (args.family == "lecam") {
    if (args.r_min < 0.0 || args.affinity < 0.0)
      throw InvalidInput("lecam needs --r-min and --affinity");
    rec["family"] = "lecam";
    rec["r_min"] = args.r_min;
    rec["affinity"] = args.affinity;
    rec["bound"] = lecam_lower_bound(args.r_min, args.affinity);
  } else {
    throw InvalidInput(fmt::format("unknown family '{}'", args.family));
  }

  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["records"] = json::array({rec});
  emit(args.common.out, doc.dump(2) + "\n");
  return kExitOk;
}

// ---------------------------------------------------------------- check

struct CheckArgs {
  CommonArgs common;
  std::string input;
  double alpha = 0.5;
  double M = 1.0;
  double M0 = 10.0;
  double M1 = 1.0;
};

int run_check(const CheckArgs& args) {
  if (args.input.empty()) throw InvalidInput("check requires --input");
  const Eigen::MatrixXd raw = read_dense_matrix_file(args.input);
  SymmetricMatrix sigma = SymmetricMatrix::from_dense(raw);  // rejects asymmetry

  DecayClassParams params;
  params.alpha = args.alpha;
  params.M = args.M;
  params.M0 = args.M0;
  params.M1 = args.M1;

  const EigenDecomposition ed = eigendecompose(sigma);
  const double lambda_max = ed.values(0);
  const double lambda_min = ed.values(ed.values.size() - 1);
  const MembershipReport f = check_membership_f_alpha(sigma, params);
  const MembershipReport g = check_membership_g_alpha(sigma, params);

  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["input"] = args.input;
  doc["dim"] = sigma.dim();
  doc["symmetric"] = true;
  doc["lambda_max"] = lambda_max;
  doc["lambda_min"] = lambda_min;
  doc["psd"] = lambda_min >= -1e-10 * std::max(1.0, std::abs(lambda_max));
  doc["params"] = {{"alpha", params.alpha},
                   {"M", params.M},
                   {"M0", params.M0},
                   {"M1", params.M1}};
  doc["f_class"] = {{"member", f.member},
                    {"violation", f.violation},
                    {"min_tail_constant", min_tail_constant(sigma, params.alpha)}};
  doc["g_class"] = {{"member", g.member}, {"violation", g.violation}};
  emit(args.common.out, doc.dump(2) + "\n");
  return kExitOk;
}

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"covariance estimation toolkit"};
  app.require_subcommand(1);

  SimulateArgs sim;
  EstimateArgs est;
  BoundsArgs bounds;
  CheckArgs check;

  CLI::App* sim_cmd =
      app.add_subcommand("simulate", "Monte Carlo risk benchmark over a grid");
  CLI::Option *sim_seed, *sim_jobs, *sim_out, *sim_format;
  add_common(sim_cmd, sim.common, sim_seed, sim_jobs, sim_out, sim_format);
  auto* sim_p = sim_cmd->add_option("--p", sim.p_list, "dimensions")
                    ->delimiter(',');
  auto* sim_n = sim_cmd->add_option("--n", sim.n_list, "sample sizes")
                    ->delimiter(',');
  auto* sim_alpha = sim_cmd->add_option("--alpha", sim.alpha_list,
                                        "decay exponents")
                        ->delimiter(',');
  auto* sim_est = sim_cmd->add_option("--estimators", sim.estimators,
                                      "estimators (taper,band,mle,sample)")
                      ->delimiter(',');
  auto* sim_rho = sim_cmd->add_option("--rho", sim.rho, "model correlation");
  auto* sim_reps = sim_cmd->add_option("--reps", sim.reps, "replications");
  auto* sim_norm = sim_cmd->add_option("--norm", sim.norm,
                                       "error norm (operator,frobenius,l1)");

  CLI::App* est_cmd =
      app.add_subcommand("estimate", "estimate a covariance from a data file");
  CLI::Option *est_seed, *est_jobs, *est_out, *est_format;
  add_common(est_cmd, est.common, est_seed, est_jobs, est_out, est_format);
  auto* est_input = est_cmd->add_option("--input", est.input,
                                        "data file, one observation per row");
  auto* est_kind = est_cmd->add_option("--estimator", est.estimator,
                                       "taper|band|mle|sample");
  auto* est_k = est_cmd->add_option("--k", est.k, "bandwidth (0 = by rule)");
  auto* est_alpha =
      est_cmd->add_option("--alpha", est.alpha, "decay exponent for the rule");
  auto* est_loss =
      est_cmd->add_option("--loss", est.loss, "rule target: operator|frobenius");
  auto* est_eps =
      est_cmd->add_option("--eps", est.eps, "eigenvalue floor for the inverse");
  auto* est_psd =
      est_cmd->add_option("--psd-out", est.psd_out, "write PSD projection here");
  auto* est_inv = est_cmd->add_option("--inverse-out", est.inverse_out,
                                      "write floored inverse here");

  CLI::App* bounds_cmd =
      app.add_subcommand("bounds", "assemble minimax lower-bound records");
  CLI::Option *bounds_seed, *bounds_jobs, *bounds_out, *bounds_format;
  add_common(bounds_cmd, bounds.common, bounds_seed, bounds_jobs, bounds_out,
             bounds_format);
  auto* bounds_family = bounds_cmd->add_option(
      "--family", bounds.family, "f11|f12|g2|fstar|lecam");
  auto* bounds_n = bounds_cmd->add_option("--n", bounds.n, "sample size");
  auto* bounds_p = bounds_cmd->add_option("--p", bounds.p, "dimension");
  auto* bounds_alpha =
      bounds_cmd->add_option("--alpha", bounds.alpha, "decay exponent");
  auto* bounds_tau =
      bounds_cmd->add_option("--tau", bounds.tau, "perturbation scale");
  auto* bounds_k =
      bounds_cmd->add_option("--k", bounds.k, "band half-width (g2; 0 = derive)");
  auto* bounds_rmin =
      bounds_cmd->add_option("--r-min", bounds.r_min, "two-point separation");
  auto* bounds_aff =
      bounds_cmd->add_option("--affinity", bounds.affinity, "two-point affinity");

  CLI::App* check_cmd =
      app.add_subcommand("check", "class membership and PSD diagnostics");
  CLI::Option *check_seed, *check_jobs, *check_out, *check_format;
  add_common(check_cmd, check.common, check_seed, check_jobs, check_out,
             check_format);
  auto* check_input =
      check_cmd->add_option("--input", check.input, "matrix file");
  auto* check_alpha =
      check_cmd->add_option("--alpha", check.alpha, "decay exponent");
  auto* check_m = check_cmd->add_option("--big-m", check.M, "tail budget M");
  auto* check_m0 = check_cmd->add_option("--m0", check.M0, "eigenvalue cap M0");
  auto* check_m1 = check_cmd->add_option("--m1", check.M1, "entry budget M1");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("covkit");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& help) {
    app.exit(help);
    return kExitOk;
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return kExitConfig;
  }

  if (sim_cmd->parsed()) {
    const json cfg = load_config(sim.common.config_path);
    merge_option(sim_seed, cfg, "seed", sim.common.seed);
    merge_option(sim_jobs, cfg, "jobs", sim.common.jobs);
    merge_option(sim_out, cfg, "out", sim.common.out);
    merge_option(sim_format, cfg, "format", sim.common.format);
    merge_option(sim_p, cfg, "p", sim.p_list);
    merge_option(sim_n, cfg, "n", sim.n_list);
    merge_option(sim_alpha, cfg, "alpha", sim.alpha_list);
    merge_option(sim_est, cfg, "estimators", sim.estimators);
    merge_option(sim_rho, cfg, "rho", sim.rho);
    merge_option(sim_reps, cfg, "reps", sim.reps);
    merge_option(sim_norm, cfg, "norm", sim.norm);
    return run_simulate(sim);
  }
  if (est_cmd->parsed()) {
    const json cfg = load_config(est.common.config_path);
    merge_option(est_seed, cfg, "seed", est.common.seed);
    merge_option(est_jobs, cfg, "jobs", est.common.jobs);
    merge_option(est_out, cfg, "out", est.common.out);
    merge_option(est_format, cfg, "format", est.common.format);
    merge_option(est_input, cfg, "input", est.input);
    merge_option(est_kind, cfg, "estimator", est.estimator);
    merge_option(est_k, cfg, "k", est.k);
    merge_option(est_alpha, cfg, "alpha", est.alpha);
    merge_option(est_loss, cfg, "loss", est.loss);
    merge_option(est_eps, cfg, "eps", est.eps);
    merge_option(est_psd, cfg, "psd_out", est.psd_out);
    merge_option(est_inv, cfg, "inverse_out", est.inverse_out);
    return run_estimate(est);
  }
  if (bounds_cmd->parsed()) {
    const json cfg = load_config(bounds.common.config_path);
    merge_option(bounds_seed, cfg, "seed", bounds.common.seed);
    merge_option(bounds_jobs, cfg, "jobs", bounds.common.jobs);
    merge_option(bounds_out, cfg, "out", bounds.common.out);
    merge_option(bounds_format, cfg, "format", bounds.common.format);
    merge_option(bounds_family, cfg, "family", bounds.family);
    merge_option(bounds_n, cfg, "n", bounds.n);
    merge_option(bounds_p, cfg, "p", bounds.p);
    merge_option(bounds_alpha, cfg, "alpha", bounds.alpha);
    merge_option(bounds_tau, cfg, "tau", bounds.tau);
    merge_option(bounds_k, cfg, "k", bounds.k);
    merge_option(bounds_rmin, cfg, "r_min", bounds.r_min);
    merge_option(bounds_aff, cfg, "affinity", bounds.affinity);
    return run_bounds(bounds);
  }
  const json cfg = load_config(check.common.config_path);
  merge_option(check_seed, cfg, "seed", check.common.seed);
  merge_option(check_jobs, cfg, "jobs", check.common.jobs);
  merge_option(check_out, cfg, "out", check.common.out);
  merge_option(check_format, cfg, "format", check.common.format);
  merge_option(check_input, cfg, "input", check.input);
  merge_option(check_alpha, cfg, "alpha", check.alpha);
  merge_option(check_m, cfg, "M", check.M);
  merge_option(check_m0, cfg, "M0", check.M0);
  merge_option(check_m1, cfg, "M1", check.M1);
  return run_check(check);
}

}  // namespace

int run(const std::vector<std::string>& args) {
  try {
    return dispatch(args);
  } catch (const NumericFailure& err) {
    std::cerr << "numeric failure: " << err.what() << "\n";
    return kExitNumeric;
  } catch (const NotPositiveDefinite& err) {
    std::cerr << "numeric failure: " << err.what() << "\n";
    return kExitNumeric;
  } catch (const ParseError& err) {
    std::cerr << "input error: " << err.what() << "\n";
    return kExitConfig;
  } catch (const InvalidInput& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return kExitConfig;
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace covkit::cli
