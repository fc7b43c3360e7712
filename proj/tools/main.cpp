#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "tailcens/censoring.hpp"
#include "tailcens/csv_io.hpp"
#include "tailcens/errors.hpp"
#include "tailcens/estimators.hpp"
#include "tailcens/limit_functional.hpp"
#include "tailcens/monte_carlo.hpp"

namespace {

using nlohmann::json;
using namespace tailcens;

// Exit codes: 0 success, 2 bad input, 3 estimation failure, 4 numerics.
constexpr int kExitValidation = 2;
constexpr int kExitEstimation = 3;
constexpr int kExitNumeric = 4;

std::vector<double> parse_double_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string item =
        text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw validation_error(std::string(what) + ": could not parse '" + item + "'");
    }
    if (used != item.size())
      throw validation_error(std::string(what) + ": could not parse '" + item + "'");
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw validation_error(std::string(what) + ": empty list");
  return out;
}

std::vector<std::size_t> parse_k_grid(const std::string& text) {
  std::vector<std::size_t> out;
  for (double v : parse_double_list(text, "k grid")) {
    if (v < 1.0 || v != static_cast<double>(static_cast<std::size_t>(v)))
      throw validation_error("k grid entries must be positive integers");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

// Flag bundle describing one tail model; materialized after parsing.
struct ModelFlags {
  std::string family;
  double gamma = 0;
  double scale = 1.0;
  double burr_rho = 0;
  bool has_rho = false;

  TailModel build() const {
    TailModel m;
    m.family = family_from_name(family);
    m.gamma = gamma;
    m.scale = scale;
    if (m.family == Family::burr) {
      if (!has_rho)
        throw validation_error("burr model requires --" + prefix_ + "-burr-rho");
      m.burr_rho = burr_rho;
    }
    validate(m);
    return m;
  }

  std::string prefix_;
};

void add_model_flags(CLI::App* cmd, ModelFlags& flags, const std::string& prefix,
                     const std::string& role) {
  flags.prefix_ = prefix;
  cmd->add_option("--" + prefix + "-family", flags.family,
                  role + " family: frechet, pareto or burr")
      ->required();
  cmd->add_option("--" + prefix + "-gamma", flags.gamma, role + " tail index")
      ->required();
  cmd->add_option("--" + prefix + "-scale", flags.scale, role + " scale");
  cmd->add_option("--" + prefix + "-burr-rho", flags.burr_rho,
                  role + " second-order parameter (burr only)")
      ->each([&flags](const std::string&) { flags.has_rho = true; });
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw validation_error("cannot open output file '" + path + "'");
  out << text;
  if (!out) throw validation_error("failed writing output file '" + path + "'");
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

// Adapted Hill estimates for every k, reusing running log and censor sums.
json hill_plot(const SortedSample& sorted) {
  const std::size_t n = sorted.size();
  json rows = json::array();
  double log_sum = 0;
  std::size_t uncensored = 0;
  for (std::size_t k = 1; k < n; ++k) {
    log_sum += std::log(sorted.z[n - k]);
    uncensored += sorted.delta[n - k];
    json row{{"k", k}};
    if (uncensored == 0) {
      row["gamma1_hat"] = nullptr;
    } else {
      const double hill_k = log_sum / static_cast<double>(k) -
                            std::log(sorted.z[n - k - 1]);
      const double frac = static_cast<double>(uncensored) / static_cast<double>(k);
      row["gamma1_hat"] = hill_k / frac;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

int run_estimate(const std::string& input, std::optional<std::size_t> k_single,
                 const std::string& k_grid_text, double alpha, bool premium,
                 bool with_hill_plot) {
  const CensoredSample sample = read_censored_csv_file(input);
  const SortedSample sorted = sort_with_concomitants(sample);

  std::vector<std::size_t> ks;
  std::string k_source;
  if (k_single && !k_grid_text.empty())
    throw validation_error("give either --k or --k-grid, not both");
  if (k_single) {
    ks.push_back(*k_single);
    k_source = "flag";
  } else if (!k_grid_text.empty()) {
    ks = parse_k_grid(k_grid_text);
    k_source = "grid";
  } else {
    throw validation_error("one of --k or --k-grid is required");
  }

  json out{{"n", sorted.size()}, {"fits", json::array()}};
  for (std::size_t k : ks) {
    const TailFit fit = asymptotic_ci(sorted, k, alpha);
    json jf;
    fit_to_json(jf, fit, k_source);
    if (premium) {
      const PremiumFit pf = premium_estimate(sorted, k);
      json jp;
      fit_to_json(jp, pf, k_source);
      jf["premium"] = std::move(jp);
    }
    out["fits"].push_back(std::move(jf));
  }
  if (with_hill_plot) out["hill_plot"] = hill_plot(sorted);
  emit(out);
  return 0;
}

int run_simulate(const CensoringSetup& setup, std::size_t n,
                 const std::string& k_grid_text, std::size_t reps,
                 std::uint64_t seed, double alpha, unsigned threads,
                 const std::string& csv_path, const std::string& qq_path) {
  ExperimentConfig cfg;
  cfg.setup = setup;
  cfg.n = n;
  cfg.k_grid = parse_k_grid(k_grid_text);
  cfg.reps = reps;
  cfg.master_seed = seed;
  cfg.alpha = alpha;
  cfg.threads = threads;

  const EstimationReport report = run_estimation_experiment(cfg);
  if (!csv_path.empty()) write_text_file(csv_path, report_to_csv(report));
  if (!qq_path.empty()) {
    std::string text = "k,normal_quantile,standardized_estimate\n";
    for (const auto& kr : report.per_k) {
      if (kr.reps_used < 2 || !kr.var_gamma1 || !(*kr.var_gamma1 > 0.0)) continue;
      for (const auto& [grid, value] : qq_pairs(kr.estimates)) {
        text += std::to_string(kr.k);
        text += ',';
        text += std::to_string(grid);
        text += ',';
        text += std::to_string(value);
        text += '\n';
      }
    }
    write_text_file(qq_path, text);
  }

  json j;
  report_to_json(j, report);
  emit(j);
  return 0;
}

int run_limits(double gamma1, double p, double theta, double t0,
               std::size_t grid, std::size_t reps, std::uint64_t seed,
               unsigned threads, bool sweep_t0) {
  LimitParams prm;
  prm.gamma1 = gamma1;
  prm.p = p;
  prm.theta = theta;
  prm.t0 = t0;
  prm.grid_size = grid;

  if (!sweep_t0) {
    const LimitReport report = run_limit_experiment(prm, reps, seed, threads);
    json j;
    report_to_json(j, report);
    emit(j);
    return 0;
  }

  // Same experiment at t0 and t0/2; the limiting spread should barely move.
  json runs = json::array();
  double var_coarse = 0, var_fine = 0;
  for (int half = 0; half < 2; ++half) {
    LimitParams cur = prm;
    cur.t0 = half == 0 ? prm.t0 : prm.t0 / 2.0;
    const LimitReport report = run_limit_experiment(cur, reps, seed, threads);
    (half == 0 ? var_coarse : var_fine) = report.gamma_fn.target_var;
    json j;
    report_to_json(j, report);
    runs.push_back(std::move(j));
  }
  const double sd_ratio = std::sqrt(var_fine / var_coarse);
  emit(json{{"runs", std::move(runs)}, {"target_sd_ratio", sd_ratio}});
  return 0;
}

int run_lemma1_check(const CensoringSetup& setup, const std::string& z_text,
                     const std::string& t_text) {
  const std::vector<double> zs = parse_double_list(z_text, "z list");
  const std::vector<double> ts = parse_double_list(t_text, "t list");
  const DerivedParams d = derived_params(setup);

  std::cout << "z,t,ratio,target,rel_error\n";
  for (double z : zs) {
    const double target = d.p * std::pow(z, -1.0 / d.gamma_z);
    for (double t : ts) {
      const double ratio = subdist_ratio(setup, z, t);
      const double rel = std::abs(ratio - target) / target;
      std::cout << z << ',' << t << ',' << ratio << ',' << target << ','
                << rel << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Tail index and excess-of-loss premium estimation under random "
      "censoring, with Monte Carlo checks of the limiting normal law"};
  app.require_subcommand(1);
  std::cout.precision(12);

  // estimate
  auto* est = app.add_subcommand(
      "estimate", "Fit the censoring-adapted tail index to CSV data");
  std::string est_input;
  std::optional<std::size_t> est_k;
  std::string est_k_grid;
  double est_alpha = 0.05;
  bool est_premium = false;
  bool est_hill_plot = false;
  est->add_option("-i,--input", est_input, "input CSV with header z,delta")
      ->required();
  est->add_option("--k", est_k, "number of top order statistics");
  est->add_option("--k-grid", est_k_grid, "comma-separated list of k values");
  est->add_option("--alpha", est_alpha, "two-sided confidence level complement");
  est->add_flag("--premium", est_premium,
                "also estimate the excess-of-loss premium at each k");
  est->add_flag("--hill-plot", est_hill_plot,
                "emit adapted Hill estimates for every k");

  // simulate
  auto* sim = app.add_subcommand(
      "simulate", "Monte Carlo study of the estimator on a censoring model");
  ModelFlags sim_x, sim_y;
  add_model_flags(sim, sim_x, "x", "claim");
  add_model_flags(sim, sim_y, "y", "censor");
  std::size_t sim_n = 1000;
  std::string sim_k_grid;
  std::size_t sim_reps = 100;
  std::uint64_t sim_seed = 42;
  double sim_alpha = 0.05;
  unsigned sim_threads = 0;
  std::string sim_csv, sim_qq;
  sim->add_option("--n", sim_n, "sample size per replication");
  sim->add_option("--k-grid", sim_k_grid, "comma-separated list of k values")
      ->required();
  sim->add_option("--reps", sim_reps, "number of replications");
  sim->add_option("--seed", sim_seed, "master seed");
  sim->add_option("--alpha", sim_alpha, "two-sided confidence level complement");
  sim->add_option("--threads", sim_threads, "worker threads, 0 = all cores");
  sim->add_option("--csv", sim_csv, "write the per-k summary table here");
  sim->add_option("--qq", sim_qq, "write standardized QQ pairs here");

  // limits
  auto* lim = app.add_subcommand(
      "limits", "Sample the limiting Gaussian functionals directly");
  double lim_gamma1 = 0.6, lim_p = 1.0, lim_theta = 0.5, lim_t0 = 0.005;
  std::size_t lim_grid = 512, lim_reps = 1000;
  std::uint64_t lim_seed = 42;
  unsigned lim_threads = 0;
  bool lim_sweep = false;
  lim->add_option("--gamma1", lim_gamma1, "claim tail index");
  lim->add_option("--p", lim_p, "limit uncensored fraction in (0,1]");
  lim->add_option("--theta", lim_theta, "uncensored probability in (0,1)");
  lim->add_option("--t0", lim_t0, "effective tail fraction");
  lim->add_option("--grid", lim_grid, "quadrature nodes");
  lim->add_option("--reps", lim_reps, "number of bridge replications");
  lim->add_option("--seed", lim_seed, "master seed");
  lim->add_option("--threads", lim_threads, "worker threads, 0 = all cores");
  lim->add_flag("--sweep-t0", lim_sweep, "run at t0 and t0/2 and compare");

  // lemma1-check
  auto* lem = app.add_subcommand(
      "lemma1-check",
      "Tabulate the uncensored subdistribution ratio against its tail limit");
  ModelFlags lem_x, lem_y;
  add_model_flags(lem, lem_x, "x", "claim");
  add_model_flags(lem, lem_y, "y", "censor");
  std::string lem_z = "0.5,1,2";
  std::string lem_t = "0.01,0.001,0.0001";
  lem->add_option("--z-list", lem_z, "comma-separated relative levels z");
  lem->add_option("--t-list", lem_t, "comma-separated tail fractions t");

  try {
    app.parse(argc, argv);
    if (*est)
      return run_estimate(est_input, est_k, est_k_grid, est_alpha, est_premium,
                          est_hill_plot);
    if (*sim)
      return run_simulate(CensoringSetup{sim_x.build(), sim_y.build()}, sim_n,
                          sim_k_grid, sim_reps, sim_seed, sim_alpha,
                          sim_threads, sim_csv, sim_qq);
    if (*lim)
      return run_limits(lim_gamma1, lim_p, lim_theta, lim_t0, lim_grid,
                        lim_reps, lim_seed, lim_threads, lim_sweep);
    if (*lem)
      return run_lemma1_check(CensoringSetup{lem_x.build(), lem_y.build()},
                              lem_z, lem_t);
    return kExitValidation;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    if (code == 0) return 0;  // --help and friends
    return kExitValidation;
  } catch (const validation_error& e) {
    std::cerr << json{{"error", "validation"}, {"message", e.what()}}.dump()
              << '\n';
    return kExitValidation;
  } catch (const estimation_error& e) {
    std::cerr << json{{"error", "estimation"}, {"message", e.what()}}.dump()
              << '\n';
    return kExitEstimation;
  } catch (const numeric_error& e) {
    std::cerr << json{{"error", "numeric"}, {"message", e.what()}}.dump()
              << '\n';
    return kExitNumeric;
  }
}
