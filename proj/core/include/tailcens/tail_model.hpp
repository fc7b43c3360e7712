#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

namespace tailcens {

enum class Family { frechet, pareto, burr };

const char* family_name(Family f) noexcept;
Family family_from_name(const std::string& name);

// Heavy-tailed claim size model with tail index gamma > 0, meaning the
// survival function is regularly varying with exponent -1/gamma.
//
//   frechet:  F(x) = exp(-(x/scale)^(-1/gamma)),          x > 0
//   pareto:   S(x) = (x/scale)^(-1/gamma),                x >= scale
//   burr:     S(x) = (1 + (x/scale)^(-rho/gamma))^(1/rho), x > 0, rho < 0
//
// The Burr form is the (gamma, rho) parameterization: quantile
// q(u) = scale * ((1-u)^rho - 1)^(-gamma/rho), so the tail behaves like
// scale * (1-u)^(-gamma) with second-order exponent rho.
struct TailModel {
  Family family = Family::pareto;
  double gamma = 1.0;
  double scale = 1.0;
  double burr_rho = 0.0;  // required negative for burr, ignored otherwise

  // u-quantile, 0 < u < 1.
  double quantile(double u) const;

  // Quantile expressed through the survival level w = 1 - u, 0 < w < 1.
  // Algebraically quantile(1-w) but computed from w directly, which keeps
  // full precision deep in the tail where 1-u would round.
  double survival_quantile(double w) const;

  // S(x) = 1 - F(x) for x > 0.
  double survival(double x) const;
};

// Throws validation_error on inconsistent parameters.
void validate(const TailModel& model);

TailModel model_from_json(const nlohmann::json& j);
void model_to_json(nlohmann::json& j, const TailModel& model);

}  // namespace tailcens
