#include "tailcens/censoring.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>
#include <nlohmann/json.hpp>

#include "tailcens/errors.hpp"
#include "tailcens/rng.hpp"

namespace tailcens {
namespace {

constexpr double kQuadTol = 1e-11;     // tanh-sinh termination target
constexpr double kQuadMaxErr = 1e-8;   // accepted a posteriori estimate

// Integral over w in [0, w_hi] of S_y(survival_quantile_x(w)) dw. This is
// the uncensored part of the observed distribution expressed on the
// survival scale of X, where the far tail keeps full precision.
double uncensored_mass(const CensoringSetup& setup, double w_hi,
                       const char* what) {
  const auto f = [&setup](double w) {
    return setup.model_y.survival(setup.model_x.survival_quantile(w));
  };
  // A Pareto censor has S_y identically 1 below its scale, a kink the
  // quadrature cannot cross. Below the kink the integrand is constant, so
  // that piece is exact and the quadrature stops at the kink.
  double w_quad = w_hi;
  double flat = 0.0;
  if (setup.model_y.family == Family::pareto) {
    const double w_kink = setup.model_x.survival(setup.model_y.scale);
    if (w_kink < w_hi) {
      w_quad = w_kink;
      flat = w_hi - w_kink;
    }
  }
  if (w_quad == 0.0) return flat;
  boost::math::quadrature::tanh_sinh<double> integrator;
  double err = std::numeric_limits<double>::quiet_NaN();
  double l1 = 0;
  const double v = integrator.integrate(f, 0.0, w_quad, kQuadTol, &err, &l1);
  if (!std::isfinite(v) || err > kQuadMaxErr) {
    std::ostringstream os;
    os << what << ": quadrature did not converge (value " << v
       << ", error estimate " << err << ")";
    throw numeric_error(os.str());
  }
  return v + flat;
}

}  // namespace

void validate(const CensoringSetup& setup) {
  validate(setup.model_x);
  validate(setup.model_y);
}

CensoringSetup setup_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("x") || !j.contains("y"))
    throw validation_error("censoring spec must be an object with x and y models");
  return CensoringSetup{model_from_json(j.at("x")), model_from_json(j.at("y"))};
}

void setup_to_json(nlohmann::json& j, const CensoringSetup& setup) {
  nlohmann::json jx, jy;
  model_to_json(jx, setup.model_x);
  model_to_json(jy, setup.model_y);
  j = nlohmann::json{{"x", std::move(jx)}, {"y", std::move(jy)}};
}

DerivedParams derived_params(const CensoringSetup& setup) {
  validate(setup);
  const double g1 = setup.model_x.gamma;
  const double g2 = setup.model_y.gamma;
  DerivedParams d;
  d.gamma_z = g1 * g2 / (g1 + g2);
  d.p = g2 / (g1 + g2);
  d.q = g1 / (g1 + g2);
  return d;
}

double theta(const CensoringSetup& setup) {
  validate(setup);
  return uncensored_mass(setup, 1.0, "theta");
}

double censored_survival(const CensoringSetup& setup, double x) {
  return setup.model_x.survival(x) * setup.model_y.survival(x);
}

double uncensored_tail(const CensoringSetup& setup, double x) {
  validate(setup);
  const double w_hi = setup.model_x.survival(x);
  if (w_hi == 0.0) return 0.0;
  return uncensored_mass(setup, w_hi, "uncensored_tail");
}

double h_quantile(const CensoringSetup& setup, double t) {
  validate(setup);
  if (!(t > 0.0 && t < 1.0))
    throw validation_error("h_quantile: t must lie in (0,1)");

  const auto hbar = [&setup](double x) { return censored_survival(setup, x); };

  // S_x(hi) = t forces Hbar(hi) <= t; expand the lower end until the
  // bracket contains the root.
  const double hi = setup.model_x.survival_quantile(t);
  if (hbar(hi) == t) return hi;
  double lo = hi;
  for (int i = 0; i < 4096 && hbar(lo) < t; ++i) lo *= 0.5;
  if (!(hbar(lo) >= t)) {
    std::ostringstream os;
    os << "h_quantile: failed to bracket the level " << t;
    throw numeric_error(os.str());
  }

  const auto g = [&](double x) { return hbar(x) - t; };
  boost::math::tools::eps_tolerance<double> tol(34);  // ~1e-10 relative
  std::uintmax_t max_iter = 200;
  const auto r = boost::math::tools::toms748_solve(g, lo, hi, tol, max_iter);
  if (max_iter >= 200) throw numeric_error("h_quantile: root solve did not converge");
  return 0.5 * (r.first + r.second);
}

double subdist_ratio(const CensoringSetup& setup, double z, double t) {
  if (!(z > 0.0)) throw validation_error("subdist_ratio: z must be positive");
  if (!(t > 0.0 && t < 1.0))
    throw validation_error("subdist_ratio: t must lie in (0,1)");
  const double h = h_quantile(setup, t);
  return uncensored_tail(setup, z * h) / t;
}

CensoredSample sample_censored(const CensoringSetup& setup, std::size_t n,
                               std::uint64_t seed) {
  validate(setup);
  CensoredSample out;
  out.z.resize(n);
  out.delta.resize(n);
  const CounterRng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    // Inversion on the survival scale; the pair law is unchanged and the
    // far tail is not squeezed against 1.
    const auto [w1, w2] = rng.uniform_pair(i);
    const double x = setup.model_x.survival_quantile(w1);
    const double y = setup.model_y.survival_quantile(w2);
    out.z[i] = x <= y ? x : y;
    out.delta[i] = x <= y ? 1 : 0;
  }
  return out;
}

}  // namespace tailcens
