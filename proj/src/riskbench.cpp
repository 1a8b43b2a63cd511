#include "covkit/riskbench.hpp"

#include <fmt/format.h>

#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <thread>

#include "covkit/matcore.hpp"
#include "covkit/models.hpp"

namespace covkit {

int resolve_jobs(int jobs) {
  if (jobs < 0) throw InvalidInput(fmt::format("jobs must be >= 0, got {}", jobs));
  if (jobs > 0) return jobs;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

// Runs fn(0..total-1) on up to `jobs` threads. Each index writes only
// its own output slot, so results are identical for any thread count.
void parallel_for(int total, int jobs, const std::function<void(int)>& fn) {
  jobs = std::min(resolve_jobs(jobs), total);
  if (jobs <= 1) {
    for (int i = 0; i < total; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> failures(static_cast<std::size_t>(jobs));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(jobs));
  for (int t = 0; t < jobs; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (int i = next.fetch_add(1); i < total; i = next.fetch_add(1)) fn(i);
      } catch (...) {
        failures[static_cast<std::size_t>(t)] = std::current_exception();
        next.store(total);  // stop handing out work
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& failure : failures)
    if (failure) std::rethrow_exception(failure);
}

void validate_cell(const BenchCell& cell) {
  if (cell.p < 1) throw InvalidInput(fmt::format("p must be >= 1, got {}", cell.p));
  if (cell.n < 2) throw InvalidInput(fmt::format("n must be >= 2, got {}", cell.n));
  if (cell.reps < 1)
    throw InvalidInput(fmt::format("reps must be >= 1, got {}", cell.reps));
  if (!(cell.alpha > 0.0))
    throw InvalidInput(fmt::format("alpha must be > 0, got {}", cell.alpha));
  if (!(std::abs(cell.rho) <= 1.0))
    throw InvalidInput(fmt::format("rho must be in [-1,1], got {}", cell.rho));
}

double error_norm(const SymmetricMatrix& delta, Norm norm) {
  switch (norm) {
    case Norm::Operator: return operator_norm(delta);
    case Norm::Frobenius: return frobenius_norm(delta);
    case Norm::L1: return l1_matrix_norm(delta);
  }
  throw InvalidInput("unknown norm");
}

// The banded estimators take their bandwidth from the rule matching
// the cell's norm; the l1 norm has no dedicated rule and uses the
// operator one.
int cell_bandwidth(const BenchCell& cell) {
  if (cell.estimator != EstimatorKind::Taper && cell.estimator != EstimatorKind::Band)
    return 0;
  BandwidthRule rule;
  rule.estimator = cell.estimator;
  rule.alpha = cell.alpha;
  rule.loss = cell.norm == Norm::Frobenius ? Loss::Frobenius : Loss::Operator;
  return select_bandwidth(rule, cell.n, cell.p);
}

SymmetricMatrix estimate_for(const BenchCell& cell, const SampleSet& s, int k) {
  switch (cell.estimator) {
    case EstimatorKind::Taper: return taper_estimate(s, k);
    case EstimatorKind::Band: return band_estimate(s, k);
    case EstimatorKind::Mle: return mle_covariance(s);
    case EstimatorKind::Sample: return sample_covariance(s);
  }
  throw InvalidInput("unknown estimator");
}

}  // namespace

RiskReport run_cell(const BenchCell& cell, const BenchOptions& options) {
  validate_cell(cell);

  CovarianceModel model;
  model.kind = ModelKind::ToeplitzDecay;
  model.p = cell.p;
  model.params.alpha = cell.alpha;
  model.rho = cell.rho;
  const SymmetricMatrix sigma = realize(model);
  const GaussianSampler sampler(sigma);
  const int k = cell_bandwidth(cell);

  std::vector<double> errors(static_cast<std::size_t>(cell.reps), 0.0);
  parallel_for(cell.reps, options.jobs, [&](int rep) {
    const SampleSet s =
        sampler.draw(cell.n, cell.seed, static_cast<std::uint64_t>(rep));
    const SymmetricMatrix estimate = estimate_for(cell, s, k);
    errors[static_cast<std::size_t>(rep)] = error_norm(estimate - sigma, cell.norm);
  });

  // Ordered reduction: the sums below are index-ordered regardless of
  // which thread produced each entry.
  double sum = 0.0;
  for (double e : errors) sum += e;
  const double mean = sum / cell.reps;
  double sq = 0.0;
  for (double e : errors) sq += (e - mean) * (e - mean);
  const double sd = cell.reps > 1 ? std::sqrt(sq / (cell.reps - 1)) : 0.0;

  RiskReport report;
  report.cell = cell;
  report.k_used = k;
  report.mean_error = mean;
  report.std_error = sd / std::sqrt(static_cast<double>(cell.reps));
  if (options.keep_per_rep) report.per_rep_errors = std::move(errors);
  return report;
}

std::vector<CellOutcome> run_grid(const std::vector<BenchCell>& cells,
                                  const BenchOptions& options) {
  std::vector<CellOutcome> outcomes;
  outcomes.reserve(cells.size());
  for (const BenchCell& cell : cells) {
    CellOutcome outcome;
    try {
      outcome.report = run_cell(cell, options);
    } catch (const Error& err) {
      outcome.error = err.what();
    }
    outcomes.push_back(std::move(outcome));
  }
  return outcomes;
}

RateScalingResult rate_scaling_check(double alpha, int p,
                                     const std::vector<int>& n_list, Norm norm,
                                     EstimatorKind estimator, int reps,
                                     std::uint64_t seed,
                                     const BenchOptions& options, double rho) {
  if (n_list.size() < 3)
    throw InvalidInput(
        fmt::format("need at least 3 sample sizes, got {}", n_list.size()));

  RateScalingResult result;
  result.reports.reserve(n_list.size());
  for (int n : n_list) {
    BenchCell cell;
    cell.p = p;
    cell.n = n;
    cell.alpha = alpha;
    cell.rho = rho;
    cell.estimator = estimator;
    cell.norm = norm;
    cell.reps = reps;
    cell.seed = seed;
    result.reports.push_back(run_cell(cell, options));
  }

  const std::size_t m = n_list.size();
  double sx = 0.0, sy = 0.0;
  std::vector<double> xs(m), ys(m);
  for (std::size_t i = 0; i < m; ++i) {
    xs[i] = std::log(static_cast<double>(n_list[i]));
    const double mean = result.reports[i].mean_error;
    if (!(mean > 0.0))
      throw NumericFailure("rate fit needs positive mean errors", mean);
    ys[i] = 2.0 * std::log(mean);  // log of the squared mean error
    sx += xs[i];
    sy += ys[i];
  }
  const double xbar = sx / m, ybar = sy / m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (xs[i] - xbar) * (xs[i] - xbar);
    sxy += (xs[i] - xbar) * (ys[i] - ybar);
  }
  if (sxx == 0.0) throw InvalidInput("sample sizes must not all coincide");
  result.slope = sxy / sxx;
  result.intercept = ybar - result.slope * xbar;
  return result;
}

const char* to_string(Norm norm) {
  switch (norm) {
    case Norm::Operator: return "operator";
    case Norm::Frobenius: return "frobenius";
    case Norm::L1: return "l1";
  }
  return "unknown";
}

Norm norm_from_string(const std::string& name) {
  if (name == "operator") return Norm::Operator;
  if (name == "frobenius") return Norm::Frobenius;
  if (name == "l1") return Norm::L1;
  throw InvalidInput(fmt::format("unknown norm '{}'", name));
}

}  // namespace covkit
