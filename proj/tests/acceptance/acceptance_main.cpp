// Acceptance gate: every release criterion is evaluated at its stated
// tolerance and reported as one pass/fail line. The process exits with the
// number of failed criteria.

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "tailcens/bridge.hpp"
#include "tailcens/censoring.hpp"
#include "tailcens/estimators.hpp"
#include "tailcens/limit_functional.hpp"
#include "tailcens/monte_carlo.hpp"
#include "tailcens/rng.hpp"

using namespace tailcens;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int number, const std::string& name, const Outcome& outcome) {
  std::cout << (outcome.pass ? "[PASS]" : "[FAIL]") << " criterion " << number
            << " (" << name << "): " << outcome.detail << std::endl;
  if (!outcome.pass) ++failures;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// 1. Without censoring the adapted estimator must reduce to the plain Hill
// estimator for every k, up to machine epsilon.
Outcome criterion_uncensored_reduction() {
  const CounterRng rng(101);
  std::uint64_t ctr = 0;
  double worst = 0.0;
  for (int c = 0; c < 1000; ++c) {
    const std::size_t n = 20 + static_cast<std::size_t>(rng.uniform(ctr++) * 180);
    CensoredSample sample;
    for (std::size_t i = 0; i < n; ++i) {
      sample.z.push_back(0.5 + rng.uniform(ctr++));
      sample.delta.push_back(1);
    }
    const SortedSample sorted = sort_with_concomitants(sample);
    for (std::size_t k = 1; k < n; ++k) {
      const double h = hill(sorted, k);
      const double a = adapted_hill(sorted, k);
      const double tol = 2.220446049250313e-16 * std::max(1.0, std::abs(h));
      worst = std::max(worst, std::abs(a - h));
      if (std::abs(a - h) > tol)
        return {false, "case " + std::to_string(c) + ", k " + std::to_string(k) +
                           ": |adapted - hill| = " + fmt(std::abs(a - h))};
    }
  }
  return {true, "1000 random uncensored samples, every k; max |adapted - hill| = " +
                    fmt(worst)};
}

// 2. Hand fixtures with externally computed values.
Outcome criterion_hand_fixtures() {
  const SortedSample dyadic =
      sort_with_concomitants({{1, 2, 4, 8}, {1, 1, 1, 1}});
  const double h = hill(dyadic, 2);
  const double target = 1.5 * std::log(2.0);
  if (std::abs(h - target) > 1e-12)
    return {false, "hill fixture: got " + fmt(h) + ", want 1.5 log 2"};

  const SortedSample km_fix = sort_with_concomitants({{1, 2, 3}, {1, 0, 1}});
  const double at2 = kaplan_meier_survival(km_fix, 2);
  const double at3 = kaplan_meier_survival(km_fix, 3);
  if (at2 != 2.0 / 3.0)
    return {false, "product-limit fixture at m=2: got " + fmt(at2) + ", want exactly 2/3"};
  if (at3 != 0.0)
    return {false, "product-limit fixture at m=3: got " + fmt(at3) + ", want exactly 0"};
  return {true, "hill([1,2,4,8], k=2) = 1.5 log 2 within 1e-12; product-limit "
                "fixture equals 2/3 and 0 exactly"};
}

// 3. With no censoring the product-limit estimator must coincide with the
// empirical survival function exactly, at every order statistic.
Outcome criterion_km_empirical() {
  const CounterRng rng(202);
  std::uint64_t ctr = 0;
  for (int c = 0; c < 1000; ++c) {
    const std::size_t n = 5 + static_cast<std::size_t>(rng.uniform(ctr++) * 295);
    CensoredSample sample;
    for (std::size_t i = 0; i < n; ++i) {
      sample.z.push_back(rng.uniform(ctr++) + 0.001);
      sample.delta.push_back(1);
    }
    const SortedSample sorted = sort_with_concomitants(sample);
    for (std::size_t m = 0; m <= n; ++m) {
      if (kaplan_meier_survival(sorted, m) !=
          static_cast<double>(n - m) / static_cast<double>(n))
        return {false, "case " + std::to_string(c) + ", m " + std::to_string(m) +
                           ": product-limit differs from (n-m)/n"};
    }
  }
  return {true, "1000 random uncensored samples: product-limit equals (n-m)/n "
                "exactly at every m"};
}

// 4 and 5 share one Monte Carlo run at the published design point.
EstimationReport desk_scale_report() {
  ExperimentConfig cfg;
  cfg.setup = {TailModel{Family::frechet, 0.6, 1.0, 0.0},
               TailModel{Family::frechet, 0.9, 1.0, 0.0}};
  cfg.n = 30000;
  cfg.k_grid = {500};
  cfg.reps = 1000;
  cfg.master_seed = 42;
  cfg.alpha = 0.05;
  return run_estimation_experiment(cfg);
}

Outcome criterion_desk_scale_limit(const KReport& kr) {
  const double var_target = 0.216;  // p * gamma1^2 at gamma1 = 0.6, p = 0.6
  const double scaled = kr.scaled_variance.value_or(-1.0);
  const bool var_ok = scaled > 0.75 * var_target && scaled < 1.25 * var_target;
  const bool mean_ok = std::abs(kr.mean_gamma1 - 0.6) < 0.05;
  const bool ks_ok = kr.ks_p_value.value_or(0.0) > 0.01;
  const std::string detail =
      "k Var = " + fmt(scaled) + " vs target 0.216 +-25% (" +
      (var_ok ? "ok" : "out") + "); mean = " + fmt(kr.mean_gamma1) +
      " vs 0.6 +-0.05 (" + (mean_ok ? "ok" : "out") +
      "); KS p = " + fmt(kr.ks_p_value.value_or(0.0)) + " > 0.01 (" +
      (ks_ok ? "ok" : "out") + ")";
  return {var_ok && mean_ok && ks_ok, detail};
}

Outcome criterion_ci_coverage(const KReport& kr) {
  const bool ok = kr.ci_coverage >= 0.90 && kr.ci_coverage <= 0.98;
  return {ok, "empirical coverage = " + fmt(kr.ci_coverage) +
                  ", required within [0.90, 0.98]"};
}

// 6. Covariance identities of the limiting processes at theta=0.6, p=0.5.
Outcome criterion_bridge_covariance() {
  const double theta = 0.6, p = 0.5, s = 0.3, t = 0.7;
  const std::vector<double> points{theta - p * t, theta - p * s, theta,
                                   1.0 - (1.0 - p) * t, 1.0 - (1.0 - p) * s};
  const std::size_t reps = 100000;
  std::vector<double> d_s(reps), d_t(reps), ds_s(reps), ds_t(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    const BridgePath path = simulate_bridge(points, mix_seed(777, r));
    const double b_theta = path.value_at(theta);
    d_s[r] = b_theta - path.value_at(theta - p * s);
    d_t[r] = b_theta - path.value_at(theta - p * t);
    ds_s[r] = d_s[r] - path.value_at(1.0 - (1.0 - p) * s);
    ds_t[r] = d_t[r] - path.value_at(1.0 - (1.0 - p) * t);
  }

  const auto moments = [reps](const std::vector<double>& x,
                              const std::vector<double>& y) {
    double mx = 0, my = 0;
    for (std::size_t r = 0; r < reps; ++r) {
      mx += x[r];
      my += y[r];
    }
    mx /= static_cast<double>(reps);
    my /= static_cast<double>(reps);
    double vx = 0, vy = 0, cov = 0;
    for (std::size_t r = 0; r < reps; ++r) {
      vx += (x[r] - mx) * (x[r] - mx);
      vy += (y[r] - my) * (y[r] - my);
      cov += (x[r] - mx) * (y[r] - my);
    }
    const double n = static_cast<double>(reps - 1);
    return std::array<double, 3>{vx / n, vy / n, cov / n};
  };

  // Gaussian standard error of a sample covariance.
  const auto cov_se = [reps](const std::array<double, 3>& m) {
    return std::sqrt((m[0] * m[1] + m[2] * m[2]) / static_cast<double>(reps));
  };

  const auto md = moments(d_s, d_t);
  const double got_d = md[2] / p;
  const double want_d = s - p * s * t;  // 0.3 - 0.5 * 0.21 = 0.195
  const double se_d = cov_se(md) / p;
  const bool ok_d = std::abs(got_d - want_d) < 3.0 * se_d;

  const auto ms = moments(ds_s, ds_t);
  const double got_star = ms[2];
  const double want_star = s - s * t;  // 0.09
  const double se_star = cov_se(ms);
  const bool ok_star = std::abs(got_star - want_star) < 3.0 * se_star;

  return {ok_d && ok_star,
          "p^-1 Cov = " + fmt(got_d) + " vs " + fmt(want_d) + " (se " +
              fmt(se_d) + ", " + (ok_d ? "ok" : "out") +
              "); combined Cov = " + fmt(got_star) + " vs " + fmt(want_star) +
              " (se " + fmt(se_star) + ", " + (ok_star ? "ok" : "out") + ")"};
}

// 7. Monte Carlo variances of the two limit functionals against the stated
// corollary constants.
Outcome criterion_functional_variances() {
  LimitParams gamma_prm;
  gamma_prm.gamma1 = 0.6;
  gamma_prm.p = 0.6;
  gamma_prm.theta = 0.6;
  gamma_prm.t0 = 0.005;
  gamma_prm.grid_size = 512;
  const LimitReport gr = run_limit_experiment(gamma_prm, 20000, 42);
  const double gamma_target = 0.216;  // p * gamma1^2
  const bool gamma_ok = gr.gamma_fn.empirical_var > 0.9 * gamma_target &&
                        gr.gamma_fn.empirical_var < 1.1 * gamma_target;

  LimitParams prem_prm;
  prem_prm.gamma1 = 0.5;
  prem_prm.p = 0.5;
  prem_prm.theta = 0.6;
  prem_prm.t0 = 0.005;
  prem_prm.grid_size = 512;
  const LimitReport pr = run_limit_experiment(prem_prm, 20000, 43);
  const double prem_target = 2.0625;
  const double prem_var = pr.premium_fn ? pr.premium_fn->empirical_var : -1.0;
  const bool prem_ok =
      prem_var > 0.85 * prem_target && prem_var < 1.15 * prem_target;

  return {gamma_ok && prem_ok,
          "tail-index functional Var = " + fmt(gr.gamma_fn.empirical_var) +
              " vs 0.216 +-10% (" + (gamma_ok ? "ok" : "out") +
              "); premium functional Var = " + fmt(prem_var) +
              " vs 2.0625 +-15% (" + (prem_ok ? "ok" : "out") + ")"};
}

// 8. Subdistribution tail ratio against its limit p z^(-1/gamma_z).
Outcome criterion_subdist_limit() {
  const CensoringSetup pareto{TailModel{Family::pareto, 1.0, 1.0, 0.0},
                              TailModel{Family::pareto, 1.0, 1.0, 0.0}};
  const DerivedParams dp = derived_params(pareto);
  double worst_pareto = 0.0;
  for (double z : {1.0, 2.0, 5.0}) {
    const double target = dp.p * std::pow(z, -1.0 / dp.gamma_z);
    for (double t : {0.5, 0.01, 1e-4}) {
      const double rel =
          std::abs(subdist_ratio(pareto, z, t) - target) / target;
      worst_pareto = std::max(worst_pareto, rel);
    }
  }

  const CensoringSetup frechet{TailModel{Family::frechet, 0.6, 1.0, 0.0},
                               TailModel{Family::frechet, 0.9, 1.0, 0.0}};
  const DerivedParams df = derived_params(frechet);
  double worst_frechet = 0.0;
  for (double z : {1.0, 2.0, 5.0}) {
    const double target = df.p * std::pow(z, -1.0 / df.gamma_z);
    const double rel =
        std::abs(subdist_ratio(frechet, z, 1e-4) - target) / target;
    worst_frechet = std::max(worst_frechet, rel);
  }

  const bool ok = worst_pareto <= 1e-6 && worst_frechet < 0.02;
  return {ok, "pure Pareto worst relative error = " + fmt(worst_pareto) +
                  " (<= 1e-6); Frechet worst at t = 1e-4 is " +
                  fmt(worst_frechet) + " (< 2%)"};
}

// 9. The CLI must produce byte-identical simulation reports for any thread
// count.
Outcome criterion_cli_determinism() {
  const char* tmpl = "/tmp/tailcens_accept_XXXXXX";
  std::string dir(tmpl);
  if (mkdtemp(dir.data()) == nullptr)
    return {false, "could not create a scratch directory"};

  std::vector<std::string> outputs;
  for (int threads : {1, 4, 8}) {
    const std::string out = dir + "/out" + std::to_string(threads) + ".json";
    const std::string cmd =
        std::string("\"") + TAILCENS_CLI_PATH +
        "\" simulate --x-family frechet --x-gamma 0.6 --y-family frechet "
        "--y-gamma 0.9 --n 30000 --k-grid 500 --reps 100 --seed 42 --threads " +
        std::to_string(threads) + " >" + out + " 2>/dev/null";
    const int rc = std::system(cmd.c_str());
    if (!WIFEXITED(rc) || WEXITSTATUS(rc) != 0)
      return {false, "simulate exited nonzero with --threads " +
                         std::to_string(threads)};
    std::ifstream in(out, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    outputs.push_back(os.str());
  }
  if (outputs[0].empty()) return {false, "simulate produced no output"};
  if (outputs[0] != outputs[1] || outputs[0] != outputs[2])
    return {false, "outputs differ across --threads 1/4/8"};
  return {true, "simulate output is byte-identical across --threads 1, 4, 8 (" +
                    std::to_string(outputs[0].size()) + " bytes)"};
}

}  // namespace

int main() {
  std::cout << "acceptance: tail estimation under random censoring"
            << std::endl;

  report(1, "uncensored reduction", criterion_uncensored_reduction());
  report(2, "hand fixtures", criterion_hand_fixtures());
  report(3, "product-limit vs empirical", criterion_km_empirical());

  const EstimationReport desk = desk_scale_report();
  const KReport& kr = desk.per_k[0];
  report(4, "desk-scale limit law", criterion_desk_scale_limit(kr));
  report(5, "confidence interval coverage", criterion_ci_coverage(kr));

  report(6, "bridge covariance identities", criterion_bridge_covariance());
  report(7, "limit functional variances", criterion_functional_variances());
  report(8, "subdistribution tail limit", criterion_subdist_limit());
  report(9, "thread-count determinism", criterion_cli_determinism());

  std::cout << (failures == 0 ? "all criteria passed"
                              : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures;
}
