#include "tailcens/bridge.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tailcens/errors.hpp"
#include "tailcens/rng.hpp"

namespace tailcens {

double BridgePath::value_at(double t) const {
  if (t == 0.0 || t == 1.0) return 0.0;
  const auto it = std::lower_bound(points.begin(), points.end(), t);
  if (it == points.end() || *it != t) {
    std::ostringstream os;
    os << "bridge path has no value at t=" << t;
    throw validation_error(os.str());
  }
  return values[static_cast<std::size_t>(it - points.begin())];
}

BridgePath simulate_bridge(std::vector<double> points, std::uint64_t seed) {
  const std::size_t m = points.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (!(points[i] > 0.0 && points[i] < 1.0))
      throw validation_error("bridge points must lie inside (0,1)");
    if (i > 0 && !(points[i] > points[i - 1]))
      throw validation_error("bridge points must be strictly increasing");
  }

  // Wiener path over the points plus the right endpoint, then the bridge
  // identity B(t) = W(t) - t W(1).
  const CounterRng rng(seed);
  BridgePath path;
  path.points = std::move(points);
  path.values.resize(m);
  double w = 0.0;
  double prev = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    w += rng.normal(j) * std::sqrt(path.points[j] - prev);
    prev = path.points[j];
    path.values[j] = w;
  }
  const double w_one = w + rng.normal(m) * std::sqrt(1.0 - prev);
  for (std::size_t j = 0; j < m; ++j) path.values[j] -= path.points[j] * w_one;
  return path;
}

}  // namespace tailcens
