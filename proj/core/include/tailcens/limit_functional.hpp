#pragma once

#include <cstddef>
#include <vector>

#include "tailcens/bridge.hpp"

namespace tailcens {

// Parameters of the limiting Gaussian description of the tail estimators.
// From one bridge B, three processes are read off:
//   D(s)  = B(theta) - B(theta - p*s)     (uncensored part)
//   Dt(s) = -B(1 - q*s)                   (censored part)
//   D*(s) = D(s) + Dt(s)
// t0 plays the role of the effective tail fraction k/n and grid_size is the
// node count of the singular quadrature inside the functionals.
struct LimitParams {
  double gamma1 = 0.6;
  double p = 1.0;
  double theta = 0.5;
  double t0 = 0.005;
  std::size_t grid_size = 512;

  double q() const noexcept { return 1.0 - p; }
};

// Throws validation_error unless gamma1 > 0, p in (0,1], theta in (0,1),
// t0 in (0,1), grid_size >= 1, p*t0 < theta and q*t0 < 1, which keeps every
// bridge evaluation point inside (0,1).
void validate(const LimitParams& params);

struct ProcessValues {
  double uncensored;  // D(s)
  double censored;    // Dt(s)
  double combined;    // D*(s)
};

// Evaluate the three processes at argument s. The bridge must contain
// theta, theta - p*s and (for p < 1) 1 - q*s.
ProcessValues process_values(const BridgePath& path, const LimitParams& params,
                             double s);

// Every point the functionals below read: theta, theta - p*t0*s_j,
// theta - p*t0, 1 - q*t0*s_j, 1 - q*t0 over the quadrature nodes s_j,
// sorted, deduplicated, endpoints excluded.
std::vector<double> required_points(const LimitParams& params);

// Gaussian limit of sqrt(k)(gamma1_hat - gamma1):
//   gamma1/sqrt(t0) * [ Int_0^1 s^-1 D*(t0 s) ds - D(t0)/p ].
// The integrand has an integrable singularity at 0; substituting s = u^2
// and applying the midpoint rule on grid_size nodes handles it.
double functional_gamma(const BridgePath& path, const LimitParams& params);

// Gaussian limit of the scaled premium error:
//   -p*g1^2/(1-g1) * D*(t0)/sqrt(t0)
//   + g1/(1-g1)^2 * [ Int_0^1 s^-1 D*(t0 s) ds - D(t0)/p ] / sqrt(t0).
// Requires gamma1 < 1.
double functional_premium(const BridgePath& path, const LimitParams& params);

// Exact variances of the two functionals as implemented (same quadrature
// weights), computed from the bridge covariance kernel min(s,t) - s*t as a
// quadratic form. Independent of the sampling path, so it serves as the
// reference value for Monte Carlo output.
double functional_gamma_variance(const LimitParams& params);
double functional_premium_variance(const LimitParams& params);

}  // namespace tailcens
