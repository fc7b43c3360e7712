#pragma once

namespace tailcens {

// Standard normal quantile. Acklam's rational approximation (absolute error
// below 1.2e-9 on its own) followed by one Halley refinement against the
// erfc-based CDF, which brings the result to full double accuracy.
// Throws validation_error unless 0 < p < 1.
double normal_quantile(double p);

// Standard normal CDF via erfc.
double normal_cdf(double x) noexcept;

}  // namespace tailcens
