#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "tailcens/estimators.hpp"
#include "tailcens/ks_test.hpp"
#include "tailcens/limit_functional.hpp"

namespace tailcens {

struct ExperimentConfig {
  CensoringSetup setup;
  std::size_t n = 1000;
  std::vector<std::size_t> k_grid;
  std::size_t reps = 100;
  std::uint64_t master_seed = 42;
  double alpha = 0.05;
  unsigned threads = 0;  // 0 = all hardware threads; never affects results
};

void validate(const ExperimentConfig& config);

// Per-k summary over replications. Replications where estimation fails are
// counted and excluded from the moment statistics; with fewer than two
// usable replications the variance fields stay empty, and the KS fields
// need at least twenty.
struct KReport {
  std::size_t k = 0;
  std::size_t reps_used = 0;
  std::size_t p_hat_zero = 0;    // all top-k observations censored
  std::size_t gamma_ge_one = 0;  // premium skipped, infinite-mean regime
  double mean_gamma1 = 0;
  double mean_p_hat = 0;
  std::optional<double> var_gamma1;
  std::optional<double> scaled_variance;  // k * var_gamma1
  double asymptotic_variance = 0;         // gamma1^2 / p for this setup
  std::optional<double> ks_statistic;
  std::optional<double> ks_p_value;       // estimates standardized by sample moments
  double ci_coverage = 0;
  std::vector<double> estimates;          // per-replication gamma1_hat, kept for QQ plots
};

struct EstimationReport {
  ExperimentConfig config;
  DerivedParams derived;
  double true_gamma1 = 0;
  std::vector<KReport> per_k;
};

// Replication r draws its sample with seed mix_seed(master_seed, r); results
// land in slot r of a preallocated buffer and are reduced serially in index
// order, so the report is byte-identical for any thread count.
EstimationReport run_estimation_experiment(const ExperimentConfig& config);

struct FunctionalStats {
  double empirical_mean = 0;
  double empirical_var = 0;
  double target_var = 0;  // exact covariance quadratic form of the functional
  double mean_se = 0;     // Monte Carlo standard error of the mean
  double var_se = 0;      // Monte Carlo standard error of the variance
};

struct LimitReport {
  LimitParams params;
  std::size_t reps = 0;
  FunctionalStats gamma_fn;
  std::optional<FunctionalStats> premium_fn;  // absent when gamma1 >= 1
};

// Simulates the bridge on the functional grid reps times (replication r uses
// seed mix_seed(seed, r)) and summarizes both limit functionals.
LimitReport run_limit_experiment(const LimitParams& params, std::size_t reps,
                                 std::uint64_t seed, unsigned threads = 0);

// Sorted standardized values paired with normal quantiles at (i - 0.5)/m,
// ready for a QQ plot.
std::vector<std::pair<double, double>> qq_pairs(const std::vector<double>& values);

void report_to_json(nlohmann::json& j, const EstimationReport& report);
std::string report_to_csv(const EstimationReport& report);
void report_to_json(nlohmann::json& j, const LimitReport& report);

}  // namespace tailcens
