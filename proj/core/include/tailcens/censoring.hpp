#pragma once

#include <cstdint>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "tailcens/tail_model.hpp"

namespace tailcens {

// Random right censoring: X ~ model_x is the claim, Y ~ model_y the censor,
// both positive and independent. Observed are Z = min(X, Y) and the
// indicator delta = 1(X <= Y).
struct CensoringSetup {
  TailModel model_x;
  TailModel model_y;
};

void validate(const CensoringSetup& setup);
CensoringSetup setup_from_json(const nlohmann::json& j);
void setup_to_json(nlohmann::json& j, const CensoringSetup& setup);

struct CensoredSample {
  std::vector<double> z;
  std::vector<std::uint8_t> delta;  // 1 = uncensored
};

// Tail parameters of the observed minimum:
//   gamma_z = g1*g2/(g1+g2), p = gamma_z/g1 = g2/(g1+g2), q = 1-p.
struct DerivedParams {
  double gamma_z;
  double p;
  double q;
};

DerivedParams derived_params(const CensoringSetup& setup);

// P(X <= Y) = integral of S_y over dF_x, by quadrature on the uniform scale.
// Absolute accuracy 1e-8 or numeric_error.
double theta(const CensoringSetup& setup);

// Survival function of Z: S_x(x) * S_y(x).
double censored_survival(const CensoringSetup& setup, double x);

// Upper tail of the uncensored part of the observed distribution,
// integral over (x, inf) of S_y dF_x.
double uncensored_tail(const CensoringSetup& setup, double x);

// (1-t)-quantile of Z, i.e. the level h with S_x(h)*S_y(h) = t. Bracketed
// root solve to relative tolerance 1e-10; numeric_error on bracket failure.
double h_quantile(const CensoringSetup& setup, double t);

// (1/t) * uncensored_tail(z * h_quantile(t)). Converges to p * z^(-1/gamma_z)
// as t -> 0; the gap away from the limit is the second-order bias scale that
// Monte Carlo designs need to keep negligible.
double subdist_ratio(const CensoringSetup& setup, double z, double t);

// n independent (Z, delta) pairs via quantile inversion. Pair i consumes
// exactly counter block i of the stream keyed by seed, so the output is
// identical no matter how the index range is scheduled across threads.
CensoredSample sample_censored(const CensoringSetup& setup, std::size_t n,
                               std::uint64_t seed);

}  // namespace tailcens
