#include "tailcens/monte_carlo.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tailcens/errors.hpp"
#include "tailcens/normal.hpp"
#include "tailcens/parallel.hpp"
#include "tailcens/rng.hpp"

namespace tailcens {
namespace {

// Neumaier variant of Kahan summation; the reduction always runs serially
// in replication order, this just keeps the moments accurate.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) noexcept {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }

  double value() const noexcept { return sum + comp; }
};

double compensated_mean(const std::vector<double>& xs) {
  CompensatedSum s;
  for (double x : xs) s.add(x);
  return s.value() / static_cast<double>(xs.size());
}

// Unbiased sample variance, two passes around the compensated mean.
double compensated_variance(const std::vector<double>& xs, double mean) {
  CompensatedSum s;
  for (double x : xs) s.add((x - mean) * (x - mean));
  return s.value() / static_cast<double>(xs.size() - 1);
}

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

struct RepOutcome {
  double gamma1 = 0.0;
  double p_hat = 0.0;
  bool usable = false;
  bool covered = false;
  bool gamma_ge_one = false;
};

}  // namespace

void validate(const ExperimentConfig& config) {
  validate(config.setup);
  if (config.n < 2) throw validation_error("experiment needs n >= 2");
  if (config.reps < 1) throw validation_error("experiment needs reps >= 1");
  if (config.k_grid.empty()) throw validation_error("experiment needs a k grid");
  for (std::size_t k : config.k_grid)
    if (k < 1 || k >= config.n)
      throw validation_error("every k must satisfy 1 <= k < n");
  if (!(config.alpha > 0.0 && config.alpha < 1.0))
    throw validation_error("alpha must lie in (0,1)");
}

EstimationReport run_estimation_experiment(const ExperimentConfig& config) {
  validate(config);
  const std::size_t nk = config.k_grid.size();
  const double true_gamma1 = config.setup.model_x.gamma;
  const DerivedParams derived = derived_params(config.setup);

  // outcomes[ki * reps + r]: each replication owns its slots, so parallel
  // scheduling cannot change the stored values or their reduction order.
  std::vector<RepOutcome> outcomes(nk * config.reps);
  parallel_for(0, config.reps, config.threads, [&](std::size_t r) {
    const auto sample =
        sample_censored(config.setup, config.n, mix_seed(config.master_seed, r));
    const auto sorted = sort_with_concomitants(sample);
    for (std::size_t ki = 0; ki < nk; ++ki) {
      RepOutcome& out = outcomes[ki * config.reps + r];
      const std::size_t k = config.k_grid[ki];
      const double frac = uncensored_fraction(sorted, k);
      if (frac == 0.0) continue;  // stays unusable
      const TailFit fit = asymptotic_ci(sorted, k, config.alpha);
      out.usable = true;
      out.gamma1 = fit.gamma1_hat;
      out.p_hat = fit.p_hat;
      out.covered = fit.ci_low <= true_gamma1 && true_gamma1 <= fit.ci_high;
      out.gamma_ge_one = fit.gamma1_hat >= 1.0;
    }
  });

  EstimationReport report;
  report.config = config;
  report.derived = derived;
  report.true_gamma1 = true_gamma1;
  report.per_k.reserve(nk);

  for (std::size_t ki = 0; ki < nk; ++ki) {
    KReport kr;
    kr.k = config.k_grid[ki];
    kr.asymptotic_variance = true_gamma1 * true_gamma1 / derived.p;

    CompensatedSum p_sum;
    std::size_t covered = 0;
    for (std::size_t r = 0; r < config.reps; ++r) {
      const RepOutcome& out = outcomes[ki * config.reps + r];
      if (!out.usable) {
        ++kr.p_hat_zero;
        continue;
      }
      kr.estimates.push_back(out.gamma1);
      p_sum.add(out.p_hat);
      covered += out.covered;
      kr.gamma_ge_one += out.gamma_ge_one;
    }
    kr.reps_used = kr.estimates.size();
    if (kr.reps_used > 0) {
      kr.mean_gamma1 = compensated_mean(kr.estimates);
      kr.mean_p_hat = p_sum.value() / static_cast<double>(kr.reps_used);
      kr.ci_coverage =
          static_cast<double>(covered) / static_cast<double>(kr.reps_used);
    }
    if (kr.reps_used >= 2) {
      const double var = compensated_variance(kr.estimates, kr.mean_gamma1);
      kr.var_gamma1 = var;
      kr.scaled_variance = static_cast<double>(kr.k) * var;
      if (kr.reps_used >= 20 && var > 0.0) {
        const auto ks =
            ks_normality(kr.estimates, kr.mean_gamma1, std::sqrt(var));
        kr.ks_statistic = ks.statistic;
        kr.ks_p_value = ks.p_value;
      }
    }
    report.per_k.push_back(std::move(kr));
  }
  return report;
}

LimitReport run_limit_experiment(const LimitParams& params, std::size_t reps,
                                 std::uint64_t seed, unsigned threads) {
  validate(params);
  if (reps < 2) throw validation_error("limit experiment needs reps >= 2");

  const std::vector<double> points = required_points(params);
  const bool with_premium = params.gamma1 < 1.0;

  std::vector<double> gamma_vals(reps);
  std::vector<double> premium_vals(with_premium ? reps : 0);
  parallel_for(0, reps, threads, [&](std::size_t r) {
    const BridgePath path = simulate_bridge(points, mix_seed(seed, r));
    gamma_vals[r] = functional_gamma(path, params);
    if (with_premium) premium_vals[r] = functional_premium(path, params);
  });

  const auto summarize = [reps](const std::vector<double>& vals, double target) {
    FunctionalStats st;
    st.empirical_mean = compensated_mean(vals);
    st.empirical_var = compensated_variance(vals, st.empirical_mean);
    st.target_var = target;
    st.mean_se = std::sqrt(st.empirical_var / static_cast<double>(reps));
    st.var_se = st.empirical_var * std::sqrt(2.0 / static_cast<double>(reps - 1));
    return st;
  };

  LimitReport report;
  report.params = params;
  report.reps = reps;
  report.gamma_fn = summarize(gamma_vals, functional_gamma_variance(params));
  if (with_premium)
    report.premium_fn = summarize(premium_vals, functional_premium_variance(params));
  return report;
}

std::vector<std::pair<double, double>> qq_pairs(const std::vector<double>& values) {
  const std::size_t m = values.size();
  if (m < 2) throw validation_error("qq_pairs needs at least two values");
  const double mean = compensated_mean(values);
  const double var = compensated_variance(values, mean);
  if (!(var > 0.0)) throw validation_error("qq_pairs needs nonconstant values");
  const double sd = std::sqrt(var);

  std::vector<double> sorted(values);
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double grid = (static_cast<double>(i) + 0.5) / static_cast<double>(m);
    pairs.emplace_back(normal_quantile(grid), (sorted[i] - mean) / sd);
  }
  return pairs;
}

void report_to_json(nlohmann::json& j, const EstimationReport& report) {
  nlohmann::json setup;
  setup_to_json(setup, report.config.setup);
  j = nlohmann::json{
      {"config",
       {{"setup", std::move(setup)},
        {"n", report.config.n},
        {"k_grid", report.config.k_grid},
        {"reps", report.config.reps},
        {"master_seed", report.config.master_seed},
        {"alpha", report.config.alpha}}},
      {"derived",
       {{"gamma_z", report.derived.gamma_z},
        {"p", report.derived.p},
        {"q", report.derived.q}}},
      {"true_gamma1", report.true_gamma1},
      {"results", nlohmann::json::array()}};
  for (const auto& kr : report.per_k) {
    nlohmann::json row{{"k", kr.k},
                       {"reps_used", kr.reps_used},
                       {"p_hat_zero", kr.p_hat_zero},
                       {"gamma_ge_one", kr.gamma_ge_one},
                       {"mean_gamma1", kr.mean_gamma1},
                       {"mean_p_hat", kr.mean_p_hat},
                       {"asymptotic_variance", kr.asymptotic_variance},
                       {"ci_coverage", kr.ci_coverage}};
    const auto opt = [](const std::optional<double>& v) {
      return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
    };
    row["var_gamma1"] = opt(kr.var_gamma1);
    row["scaled_variance"] = opt(kr.scaled_variance);
    row["ks_statistic"] = opt(kr.ks_statistic);
    row["ks_p_value"] = opt(kr.ks_p_value);
    j["results"].push_back(std::move(row));
  }
}

std::string report_to_csv(const EstimationReport& report) {
  std::ostringstream os;
  os << "k,reps_used,p_hat_zero,gamma_ge_one,mean_gamma1,mean_p_hat,var_gamma1,"
        "scaled_variance,asymptotic_variance,ks_statistic,ks_p_value,ci_coverage\n";
  for (const auto& kr : report.per_k) {
    os << kr.k << ',' << kr.reps_used << ',' << kr.p_hat_zero << ','
       << kr.gamma_ge_one << ',' << format_double(kr.mean_gamma1) << ','
       << format_double(kr.mean_p_hat) << ',';
    if (kr.var_gamma1) os << format_double(*kr.var_gamma1);
    os << ',';
    if (kr.scaled_variance) os << format_double(*kr.scaled_variance);
    os << ',' << format_double(kr.asymptotic_variance) << ',';
    if (kr.ks_statistic) os << format_double(*kr.ks_statistic);
    os << ',';
    if (kr.ks_p_value) os << format_double(*kr.ks_p_value);
    os << ',' << format_double(kr.ci_coverage) << '\n';
  }
  return os.str();
}

void report_to_json(nlohmann::json& j, const LimitReport& report) {
  const auto stats_json = [](const FunctionalStats& st) {
    return nlohmann::json{{"empirical_mean", st.empirical_mean},
                          {"empirical_var", st.empirical_var},
                          {"target_var", st.target_var},
                          {"mean_se", st.mean_se},
                          {"var_se", st.var_se}};
  };
  j = nlohmann::json{{"params",
                      {{"gamma1", report.params.gamma1},
                       {"p", report.params.p},
                       {"theta", report.params.theta},
                       {"t0", report.params.t0},
                       {"grid_size", report.params.grid_size}}},
                     {"reps", report.reps},
                     {"gamma_functional", stats_json(report.gamma_fn)}};
  if (report.premium_fn)
    j["premium_functional"] = stats_json(*report.premium_fn);
  else
    j["premium_functional"] = nullptr;
}

}  // namespace tailcens
