#include "tailcens/tail_model.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "tailcens/errors.hpp"

namespace tailcens {
namespace {

// log(1 + exp(t)) without overflow for large positive t.
inline double softplus(double t) noexcept {
  return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

inline void check_unit_open(double v, const char* what) {
  if (!(v > 0.0 && v < 1.0))
    throw validation_error(std::string(what) + " must lie in (0,1)");
}

}  // namespace

const char* family_name(Family f) noexcept {
  switch (f) {
    case Family::frechet: return "frechet";
    case Family::pareto: return "pareto";
    case Family::burr: return "burr";
  }
  return "unknown";
}

Family family_from_name(const std::string& name) {
  if (name == "frechet") return Family::frechet;
  if (name == "pareto") return Family::pareto;
  if (name == "burr") return Family::burr;
  throw validation_error("unknown family '" + name +
                         "' (expected frechet, pareto or burr)");
}

void validate(const TailModel& m) {
  if (!(m.gamma > 0.0) || !std::isfinite(m.gamma))
    throw validation_error("tail index gamma must be positive and finite");
  if (!(m.scale > 0.0) || !std::isfinite(m.scale))
    throw validation_error("scale must be positive and finite");
  if (m.family == Family::burr && !(m.burr_rho < 0.0))
    throw validation_error("burr_rho must be negative");
}

double TailModel::quantile(double u) const {
  check_unit_open(u, "quantile argument");
  switch (family) {
    case Family::frechet:
      return scale * std::pow(-std::log(u), -gamma);
    case Family::pareto:
      return scale * std::pow(1.0 - u, -gamma);
    case Family::burr:
      // ((1-u)^rho - 1)^(-gamma/rho), cancellation-free near u = 0.
      return scale * std::pow(std::expm1(burr_rho * std::log1p(-u)), -gamma / burr_rho);
  }
  throw validation_error("unknown family");
}

double TailModel::survival_quantile(double w) const {
  check_unit_open(w, "survival level");
  switch (family) {
    case Family::frechet:
      return scale * std::pow(-std::log1p(-w), -gamma);
    case Family::pareto:
      return scale * std::pow(w, -gamma);
    case Family::burr:
      return scale * std::pow(std::expm1(burr_rho * std::log(w)), -gamma / burr_rho);
  }
  throw validation_error("unknown family");
}

double TailModel::survival(double x) const {
  if (std::isnan(x) || x < 0.0)
    throw validation_error("survival argument must be nonnegative");
  if (x == 0.0) return 1.0;
  switch (family) {
    case Family::frechet:
      return -std::expm1(-std::pow(x / scale, -1.0 / gamma));
    case Family::pareto:
      return x <= scale ? 1.0 : std::pow(x / scale, -1.0 / gamma);
    case Family::burr: {
      // (1 + (x/scale)^(-rho/gamma))^(1/rho) evaluated in log space.
      const double lw = (-burr_rho / gamma) * std::log(x / scale);
      return std::exp(softplus(lw) / burr_rho);
    }
  }
  throw validation_error("unknown family");
}

TailModel model_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw validation_error("model spec must be a JSON object");
  TailModel m;
  try {
    m.family = family_from_name(j.at("family").get<std::string>());
    m.gamma = j.at("gamma").get<double>();
    m.scale = j.value("scale", 1.0);
    if (m.family == Family::burr) {
      if (!j.contains("burr_rho"))
        throw validation_error("burr model requires burr_rho");
      m.burr_rho = j.at("burr_rho").get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw validation_error(std::string("bad model spec: ") + e.what());
  }
  validate(m);
  return m;
}

void model_to_json(nlohmann::json& j, const TailModel& m) {
  j = nlohmann::json{{"family", family_name(m.family)},
                     {"gamma", m.gamma},
                     {"scale", m.scale}};
  if (m.family == Family::burr) j["burr_rho"] = m.burr_rho;
}

}  // namespace tailcens
