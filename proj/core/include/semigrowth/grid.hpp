#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "semigrowth/errors.hpp"

namespace semigrowth {

/// Log-uniform grid from `lo` to `hi` (both included) with the given number
/// of points per decade. The last point is exactly `hi`.
inline std::vector<double> log_grid(double lo, double hi, int per_decade) {
  if (!(lo > 0.0) || !(hi > lo) || per_decade < 1) {
    throw ConfigError("log_grid: need 0 < lo < hi and per_decade >= 1");
  }
  const double decades = std::log10(hi / lo);
  const auto n = static_cast<std::size_t>(std::ceil(decades * per_decade - 1e-9));
  std::vector<double> out;
  out.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(lo * std::pow(10.0, static_cast<double>(i) / per_decade));
  }
  out.push_back(hi);
  return out;
}

/// Same points as `log_grid`, ordered from `hi` down to `lo`.
inline std::vector<double> log_grid_descending(double lo, double hi, int per_decade) {
  auto g = log_grid(lo, hi, per_decade);
  return {g.rbegin(), g.rend()};
}

inline double decades_spanned(double lo, double hi) { return std::log10(hi / lo); }

}  // namespace semigrowth
