#include "tailcens/normal.hpp"

#include <cmath>

#include "tailcens/errors.hpp"

namespace tailcens {
namespace {

// Acklam's rational approximation to the standard normal quantile.
constexpr double kA[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                          -2.759285104469687e+02, 1.383577518672690e+02,
                          -3.066479806614716e+01, 2.506628277459239e+00};
constexpr double kB[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                          -1.556989798598866e+02, 6.680131188771972e+01,
                          -1.328068155288572e+01};
constexpr double kC[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                          -2.400758277161838e+00, -2.549732539343734e+00,
                          4.374664141464968e+00,  2.938163982698783e+00};
constexpr double kD[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                          2.445134137142996e+00, 3.754408661907416e+00};
constexpr double kPLow = 0.02425;

double acklam(double p) {
  if (p < kPLow) {
    const double r = std::sqrt(-2.0 * std::log(p));
    return (((((kC[0] * r + kC[1]) * r + kC[2]) * r + kC[3]) * r + kC[4]) * r + kC[5]) /
           ((((kD[0] * r + kD[1]) * r + kD[2]) * r + kD[3]) * r + 1.0);
  }
  if (p > 1.0 - kPLow) {
    const double r = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((kC[0] * r + kC[1]) * r + kC[2]) * r + kC[3]) * r + kC[4]) * r + kC[5]) /
           ((((kD[0] * r + kD[1]) * r + kD[2]) * r + kD[3]) * r + 1.0);
  }
  const double r = p - 0.5;
  const double s = r * r;
  return (((((kA[0] * s + kA[1]) * s + kA[2]) * s + kA[3]) * s + kA[4]) * s + kA[5]) * r /
         (((((kB[0] * s + kB[1]) * s + kB[2]) * s + kB[3]) * s + kB[4]) * s + 1.0);
}

}  // namespace

double normal_cdf(double x) noexcept {
  return 0.5 * std::erfc(-x * 0.7071067811865475244);
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw validation_error("normal_quantile: p must lie in (0,1)");
  // Work in the lower tail, where erfc keeps full relative accuracy; the
  // residual normal_cdf(x) - p would cancel catastrophically for p near 1.
  // For p in [0.5, 1] the complement 1 - p is exact (Sterbenz).
  if (p > 0.5) return -normal_quantile(1.0 - p);
  if (p == 0.5) return 0.0;
  double x = acklam(p);
  // One Halley step against the erfc-based CDF sharpens the approximation
  // to full double accuracy.
  const double e = normal_cdf(x) - p;
  const double u = e * 2.5066282746310005024 * std::exp(0.5 * x * x);
  x -= u / (1.0 + 0.5 * x * u);
  return x;
}

}  // namespace tailcens
