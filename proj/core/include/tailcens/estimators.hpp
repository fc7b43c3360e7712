#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "tailcens/censoring.hpp"

namespace tailcens {

// Sample sorted by z ascending with delta carried along as concomitants.
struct SortedSample {
  std::vector<double> z;
  std::vector<std::uint8_t> delta;

  std::size_t size() const noexcept { return z.size(); }
};

// Stable sort by z; ties keep input order for the concomitant indicators.
SortedSample sort_with_concomitants(const CensoredSample& sample);

// Hill estimator on the top k of n: mean of log z over the k largest
// observations minus log of the (n-k)-th order statistic. Requires
// 1 <= k < n and a positive threshold.
double hill(const SortedSample& sorted, std::size_t k);

// Fraction of uncensored observations among the k largest.
double uncensored_fraction(const SortedSample& sorted, std::size_t k);

// Hill estimator of the claim tail index under censoring: hill / fraction.
// Throws estimation_error when every top-k observation is censored.
double adapted_hill(const SortedSample& sorted, std::size_t k);

// Kaplan-Meier survival 1 - F_n at the m-th order statistic,
// product over i <= m of (1 - delta_[i]/(n-i+1)), with m in [0, n].
// Runs of consecutive uncensored observations telescope to a single
// integer-ratio factor, so an all-uncensored prefix yields exactly (n-m)/n.
double kaplan_meier_survival(const SortedSample& sorted, std::size_t m);

struct TailFit {
  std::size_t k = 0;
  double gamma_hat_z = 0;  // Hill estimate for the observed minimum
  double p_hat = 0;        // uncensored fraction among top k
  double gamma1_hat = 0;   // gamma_hat_z / p_hat, exact quotient
  double se = 0;           // gamma1_hat / sqrt(p_hat * k)
  double ci_low = 0;
  double ci_high = 0;
  double alpha = 0.05;
};

// Point estimate with asymptotic normal confidence interval. The estimator
// satisfies a CLT with limiting variance gamma1^2 / p at sqrt(k) scale, so
// se = gamma1_hat / sqrt(p_hat * k) and the interval is the usual two-sided
// normal band at level 1 - alpha.
TailFit asymptotic_ci(const SortedSample& sorted, std::size_t k, double alpha = 0.05);

struct PremiumFit {
  std::size_t k = 0;
  double threshold = 0;                  // Z_{n-k:n}, the retention level
  double km_survival_at_threshold = 0;   // 1 - F_n at the threshold
  double gamma1_hat = 0;
  double premium = 0;                    // gamma1/(1-gamma1) * threshold * survival
  double se_scaled = 0;                  // sigma_hat * threshold * survival / sqrt(k)
};

// Excess-of-loss premium above the random threshold Z_{n-k:n}. Requires the
// estimated tail index below one (finite mean); otherwise estimation_error.
PremiumFit premium_estimate(const SortedSample& sorted, std::size_t k);

// Limiting variance of the premium estimator at sqrt(k)/(h * S_x(h)) scale:
//   p^2 g1^4/(1-g1)^2 + g1^2/(p (1-g1)^4).
double premium_asymptotic_variance(double gamma1, double p);

// k_source records how k was chosen (caller, flag, grid position).
void fit_to_json(nlohmann::json& j, const TailFit& fit,
                 const std::string& k_source = "caller");
void fit_to_json(nlohmann::json& j, const PremiumFit& fit,
                 const std::string& k_source = "caller");

}  // namespace tailcens
