#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "covkit/estimators.hpp"
#include "covkit/sym_matrix.hpp"

namespace covkit {

/// Error norms a benchmark cell can report.
enum class Norm { Operator, Frobenius, L1 };

/// One Monte Carlo experiment: a Toeplitz-decay truth (rho = 0 gives
/// the identity), an estimator, an error norm, and a replication plan.
struct BenchCell {
  int p = 1;
  int n = 2;
  double alpha = 0.5;
  double rho = 0.0;
  EstimatorKind estimator = EstimatorKind::Taper;
  Norm norm = Norm::Operator;
  int reps = 100;
  std::uint64_t seed = 0;
};

/// Cell outcome. mean_error averages the per-replication norm errors;
/// std_error is their sample sd divided by sqrt(reps).
struct RiskReport {
  BenchCell cell;
  int k_used = 0;  // 0 for estimators without a bandwidth
  double mean_error = 0.0;
  double std_error = 0.0;
  std::vector<double> per_rep_errors;  // filled only when requested
};

struct BenchOptions {
  int jobs = 1;  // 0 = logical cores
  bool keep_per_rep = false;
};

/// Replication r draws its sample from stream (cell.seed, r), so the
/// report is bit-identical for any worker count. Aborts on the first
/// hard error inside the cell.
RiskReport run_cell(const BenchCell& cell, const BenchOptions& options = {});

/// Grid entry: either a report or the error that stopped its cell.
struct CellOutcome {
  std::optional<RiskReport> report;
  std::string error;  // empty on success
};

/// Runs cells in order, collecting per-cell failures instead of
/// stopping. Output order matches input order.
std::vector<CellOutcome> run_grid(const std::vector<BenchCell>& cells,
                                  const BenchOptions& options = {});

/// Least-squares fit of log(mean_error^2) against log(n) across the
/// given sample sizes (>= 3 of them) on the decay model with the given
/// correlation (rho = 0 gives white noise), all else held fixed.
struct RateScalingResult {
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<RiskReport> reports;
};
RateScalingResult rate_scaling_check(double alpha, int p,
                                     const std::vector<int>& n_list, Norm norm,
                                     EstimatorKind estimator, int reps,
                                     std::uint64_t seed,
                                     const BenchOptions& options = {},
                                     double rho = 0.6);

/// Number of worker threads `jobs` resolves to (0 = logical cores).
int resolve_jobs(int jobs);

const char* to_string(Norm norm);
Norm norm_from_string(const std::string& name);

}  // namespace covkit
