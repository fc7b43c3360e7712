#include "tailcens/limit_functional.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "tailcens/errors.hpp"

namespace tailcens {
namespace {

struct Terms {
  double integral;   // Int_0^1 s^-1 D*(t0 s) ds by midpoint rule in u = sqrt(s)
  double d_t0;       // D(t0)
  double dstar_t0;   // D*(t0)
};

Terms eval_terms(const BridgePath& path, const LimitParams& prm) {
  const std::size_t m = prm.grid_size;
  const double q = prm.q();
  const double b_theta = path.value_at(prm.theta);

  double integral = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double u = (static_cast<double>(j) + 0.5) / static_cast<double>(m);
    const double s = prm.t0 * u * u;
    const double dstar = b_theta - path.value_at(prm.theta - prm.p * s) -
                         path.value_at(1.0 - q * s);
    integral += 2.0 * dstar / (static_cast<double>(m) * u);
  }

  Terms t;
  t.integral = integral;
  t.d_t0 = b_theta - path.value_at(prm.theta - prm.p * prm.t0);
  t.dstar_t0 = t.d_t0 - path.value_at(1.0 - q * prm.t0);
  return t;
}

// Weighted point masses representing a functional that is linear in the
// bridge values; the variance is then the quadratic form of the covariance
// kernel min(s,t) - s*t. Weights at the pinned endpoints are dropped.
class LinearForm {
 public:
  void add(double point, double weight) {
    if (point == 0.0 || point == 1.0) return;
    weights_[point] += weight;
  }

  double variance() const {
    std::vector<double> t, w;
    t.reserve(weights_.size());
    w.reserve(weights_.size());
    for (const auto& [pt, wt] : weights_) {
      t.push_back(pt);
      w.push_back(wt);
    }
    double var = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      var += w[i] * w[i] * t[i] * (1.0 - t[i]);
      for (std::size_t j = i + 1; j < t.size(); ++j)
        var += 2.0 * w[i] * w[j] * t[i] * (1.0 - t[j]);  // t sorted, min = t[i]
    }
    return var;
  }

 private:
  std::map<double, double> weights_;
};

// Both functionals have the shape
//   [ci * integral + cd * D(t0) + cs * D*(t0)] / sqrt(t0);
// spelling that out in bridge values gives the exact weight map.
LinearForm build_form(const LimitParams& prm, double ci, double cd, double cs) {
  const std::size_t m = prm.grid_size;
  const double q = prm.q();
  const double scale = 1.0 / std::sqrt(prm.t0);
  LinearForm form;
  for (std::size_t j = 0; j < m; ++j) {
    const double u = (static_cast<double>(j) + 0.5) / static_cast<double>(m);
    const double s = prm.t0 * u * u;
    const double c = scale * ci * 2.0 / (static_cast<double>(m) * u);
    form.add(prm.theta, c);
    form.add(prm.theta - prm.p * s, -c);
    form.add(1.0 - q * s, -c);
  }
  form.add(prm.theta, scale * (cd + cs));
  form.add(prm.theta - prm.p * prm.t0, -scale * (cd + cs));
  form.add(1.0 - q * prm.t0, -scale * cs);
  return form;
}

}  // namespace

void validate(const LimitParams& prm) {
  if (!(prm.gamma1 > 0.0) || !std::isfinite(prm.gamma1))
    throw validation_error("gamma1 must be positive and finite");
  if (!(prm.p > 0.0 && prm.p <= 1.0))
    throw validation_error("p must lie in (0,1]");
  if (!(prm.theta > 0.0 && prm.theta < 1.0))
    throw validation_error("theta must lie in (0,1)");
  if (!(prm.t0 > 0.0 && prm.t0 < 1.0))
    throw validation_error("t0 must lie in (0,1)");
  if (prm.grid_size < 1) throw validation_error("grid_size must be at least 1");
  if (!(prm.p * prm.t0 < prm.theta))
    throw validation_error("require p*t0 < theta so evaluation points stay in (0,1)");
  if (!(prm.q() * prm.t0 < 1.0))
    throw validation_error("require q*t0 < 1 so evaluation points stay in (0,1)");
}

std::vector<double> required_points(const LimitParams& prm) {
  validate(prm);
  const double q = prm.q();
  std::vector<double> pts;
  pts.reserve(2 * prm.grid_size + 3);
  pts.push_back(prm.theta);
  pts.push_back(prm.theta - prm.p * prm.t0);
  if (q > 0.0) pts.push_back(1.0 - q * prm.t0);
  for (std::size_t j = 0; j < prm.grid_size; ++j) {
    const double u = (static_cast<double>(j) + 0.5) / static_cast<double>(prm.grid_size);
    const double s = prm.t0 * u * u;
    pts.push_back(prm.theta - prm.p * s);
    if (q > 0.0) pts.push_back(1.0 - q * s);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

ProcessValues process_values(const BridgePath& path, const LimitParams& prm,
                             double s) {
  validate(prm);
  if (!(s > 0.0)) throw validation_error("process argument s must be positive");
  if (!(prm.p * s < prm.theta))
    throw validation_error("process argument s too large: p*s must stay below theta");
  if (!(prm.q() * s < 1.0))
    throw validation_error("process argument s too large: q*s must stay below 1");
  ProcessValues v;
  v.uncensored = path.value_at(prm.theta) - path.value_at(prm.theta - prm.p * s);
  v.censored = -path.value_at(1.0 - prm.q() * s);
  v.combined = v.uncensored + v.censored;
  return v;
}

double functional_gamma(const BridgePath& path, const LimitParams& prm) {
  validate(prm);
  const Terms t = eval_terms(path, prm);
  return prm.gamma1 * (t.integral - t.d_t0 / prm.p) / std::sqrt(prm.t0);
}

double functional_premium(const BridgePath& path, const LimitParams& prm) {
  validate(prm);
  if (!(prm.gamma1 < 1.0))
    throw validation_error("premium functional requires gamma1 < 1");
  const Terms t = eval_terms(path, prm);
  const double g = prm.gamma1;
  const double a = prm.p * g * g / (1.0 - g);
  const double b = g / ((1.0 - g) * (1.0 - g));
  return (-a * t.dstar_t0 + b * (t.integral - t.d_t0 / prm.p)) / std::sqrt(prm.t0);
}

double functional_gamma_variance(const LimitParams& prm) {
  validate(prm);
  return build_form(prm, prm.gamma1, -prm.gamma1 / prm.p, 0.0).variance();
}

double functional_premium_variance(const LimitParams& prm) {
  validate(prm);
  if (!(prm.gamma1 < 1.0))
    throw validation_error("premium functional requires gamma1 < 1");
  const double g = prm.gamma1;
  const double a = prm.p * g * g / (1.0 - g);
  const double b = g / ((1.0 - g) * (1.0 - g));
  return build_form(prm, b, -b / prm.p, -a).variance();
}

}  // namespace tailcens
