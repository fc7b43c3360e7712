#pragma once

#include <cstdint>
#include <vector>

namespace tailcens {

// Brownian bridge sampled at a fixed set of interior points. Endpoints are
// pinned: value_at(0) and value_at(1) are 0 without registration.
struct BridgePath {
  std::vector<double> points;  // strictly increasing, inside (0,1)
  std::vector<double> values;

  // Exact-match lookup. Points must have been registered at simulation time;
  // anything else is a caller bug and throws validation_error.
  double value_at(double t) const;
};

// Exact joint draw of the bridge at the given points: independent Wiener
// increments over the points augmented with 1, cumulated to W, then
// B(t) = W(t) - t * W(1). Increment j consumes counter block j of the
// stream keyed by seed.
BridgePath simulate_bridge(std::vector<double> points, std::uint64_t seed);

}  // namespace tailcens
