#include "tailcens/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tailcens/errors.hpp"
#include "tailcens/normal.hpp"

namespace tailcens {
namespace {

void check_k(const SortedSample& sorted, std::size_t k) {
  const std::size_t n = sorted.size();
  if (n < 2) throw validation_error("need at least two observations");
  if (k < 1 || k >= n) {
    std::ostringstream os;
    os << "k must satisfy 1 <= k < n, got k=" << k << " with n=" << n;
    throw validation_error(os.str());
  }
}

}  // namespace

SortedSample sort_with_concomitants(const CensoredSample& sample) {
  const std::size_t n = sample.z.size();
  if (sample.delta.size() != n)
    throw validation_error("z and delta lengths differ");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(sample.z[i]) || sample.z[i] <= 0.0)
      throw validation_error("observations must be positive and finite");
    if (sample.delta[i] > 1)
      throw validation_error("delta must be 0 or 1");
  }

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return sample.z[a] < sample.z[b];
  });

  SortedSample out;
  out.z.resize(n);
  out.delta.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.z[i] = sample.z[idx[i]];
    out.delta[i] = sample.delta[idx[i]];
  }
  return out;
}

double hill(const SortedSample& sorted, std::size_t k) {
  check_k(sorted, k);
  const std::size_t n = sorted.size();
  const double threshold = sorted.z[n - k - 1];
  if (!(threshold > 0.0))
    throw validation_error("hill: threshold order statistic must be positive");
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) sum += std::log(sorted.z[n - 1 - i]);
  return sum / static_cast<double>(k) - std::log(threshold);
}

double uncensored_fraction(const SortedSample& sorted, std::size_t k) {
  check_k(sorted, k);
  const std::size_t n = sorted.size();
  std::size_t count = 0;
  for (std::size_t i = 0; i < k; ++i) count += sorted.delta[n - 1 - i];
  return static_cast<double>(count) / static_cast<double>(k);
}

double adapted_hill(const SortedSample& sorted, std::size_t k) {
  const double frac = uncensored_fraction(sorted, k);
  if (frac == 0.0)
    throw estimation_error("no uncensored observations among the top k");
  return hill(sorted, k) / frac;
}

double kaplan_meier_survival(const SortedSample& sorted, std::size_t m) {
  const std::size_t n = sorted.size();
  if (m > n) throw validation_error("kaplan_meier_survival: m exceeds n");
  double prod = 1.0;
  std::size_t i = 1;
  while (i <= m) {
    if (!sorted.delta[i - 1]) {
      ++i;
      continue;
    }
    // Maximal uncensored run [a, b]: the factors (n-i)/(n-i+1) telescope,
    // one division instead of b-a+1 of them.
    const std::size_t a = i;
    while (i <= m && sorted.delta[i - 1]) ++i;
    const std::size_t b = i - 1;
    prod *= static_cast<double>(n - b) / static_cast<double>(n - a + 1);
  }
  return prod;
}

TailFit asymptotic_ci(const SortedSample& sorted, std::size_t k, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw validation_error("alpha must lie in (0,1)");
  TailFit fit;
  fit.k = k;
  fit.alpha = alpha;
  fit.gamma_hat_z = hill(sorted, k);
  fit.p_hat = uncensored_fraction(sorted, k);
  if (fit.p_hat == 0.0)
    throw estimation_error("no uncensored observations among the top k");
  fit.gamma1_hat = fit.gamma_hat_z / fit.p_hat;
  fit.se = fit.gamma1_hat / std::sqrt(fit.p_hat * static_cast<double>(k));
  const double zq = normal_quantile(1.0 - alpha / 2.0);
  fit.ci_low = fit.gamma1_hat - zq * fit.se;
  fit.ci_high = fit.gamma1_hat + zq * fit.se;
  return fit;
}

double premium_asymptotic_variance(double gamma1, double p) {
  if (!(gamma1 > 0.0 && gamma1 < 1.0))
    throw validation_error("premium variance requires 0 < gamma1 < 1");
  if (!(p > 0.0 && p <= 1.0))
    throw validation_error("premium variance requires 0 < p <= 1");
  const double a = p * gamma1 * gamma1 / (1.0 - gamma1);
  const double b = gamma1 / ((1.0 - gamma1) * (1.0 - gamma1));
  return a * a + b * b / p;
}

PremiumFit premium_estimate(const SortedSample& sorted, std::size_t k) {
  const std::size_t n = sorted.size();
  PremiumFit fit;
  fit.k = k;
  fit.gamma1_hat = adapted_hill(sorted, k);
  if (fit.gamma1_hat >= 1.0)
    throw estimation_error("estimated tail index >= 1, infinite-mean regime");
  fit.threshold = sorted.z[n - k - 1];
  fit.km_survival_at_threshold = kaplan_meier_survival(sorted, n - k);
  fit.premium = fit.gamma1_hat / (1.0 - fit.gamma1_hat) * fit.threshold *
                fit.km_survival_at_threshold;
  const double p_hat = uncensored_fraction(sorted, k);
  const double sigma = std::sqrt(premium_asymptotic_variance(fit.gamma1_hat, p_hat));
  fit.se_scaled = sigma * fit.threshold * fit.km_survival_at_threshold /
                  std::sqrt(static_cast<double>(k));
  return fit;
}

void fit_to_json(nlohmann::json& j, const TailFit& fit, const std::string& k_source) {
  j = nlohmann::json{{"k", fit.k},
                     {"k_source", k_source},
                     {"gamma_hat_z", fit.gamma_hat_z},
                     {"p_hat", fit.p_hat},
                     {"gamma1_hat", fit.gamma1_hat},
                     {"se", fit.se},
                     {"ci_low", fit.ci_low},
                     {"ci_high", fit.ci_high},
                     {"alpha", fit.alpha}};
}

void fit_to_json(nlohmann::json& j, const PremiumFit& fit, const std::string& k_source) {
  j = nlohmann::json{{"k", fit.k},
                     {"k_source", k_source},
                     {"threshold", fit.threshold},
                     {"km_survival_at_threshold", fit.km_survival_at_threshold},
                     {"gamma1_hat", fit.gamma1_hat},
                     {"premium", fit.premium},
                     {"se_scaled", fit.se_scaled}};
}

}  // namespace tailcens
