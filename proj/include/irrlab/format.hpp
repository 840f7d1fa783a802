#pragma once

#include <cfenv>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>

#include "irrlab/state_space.hpp"

namespace irrlab {

/// Rounded half-to-even to 3 decimals, rendered with a fixed point.
inline std::string fixed3(double v) {
  double scaled = std::nearbyint(v * 1000.0);  // FE_TONEAREST ties to even
  if (scaled == 0.0) scaled = 0.0;             // normalize -0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", scaled / 1000.0);
  return buf;
}

/// Full-precision rendering that round-trips through strtod.
inline std::string full_precision(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// Probabilities that are exact multiples of 1/total render as reduced
/// fractions ("1/4", "3/4", "1"); anything else falls back to 3 decimals.
inline std::string format_probability(double p, State total) {
  const double scaled = p * static_cast<double>(total);
  const double nearest = std::nearbyint(scaled);
  if (std::abs(scaled - nearest) <= 1e-9 * static_cast<double>(total) &&
      nearest >= 0.0) {
    auto num = static_cast<std::uint64_t>(nearest);
    if (num == 0) return "0";
    if (num == total) return "1";
    const std::uint64_t g = std::gcd(num, static_cast<std::uint64_t>(total));
    return std::to_string(num / g) + "/" + std::to_string(total / g);
  }
  return fixed3(p);
}

}  // namespace irrlab
