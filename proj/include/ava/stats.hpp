#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "ava/errors.hpp"

namespace ava {

/// Lower-interpolation percentile: the value at rank ceil(q/100 * N) of the
/// sorted sample, so the result is always an observed value. Used for the
/// distance-band median and for report quartiles alike.
inline double percentile_lower(std::vector<double> values, double q) {
  if (values.empty()) throw EmptyInput("percentile of empty sample");
  std::sort(values.begin(), values.end());
  const auto n = static_cast<double>(values.size());
  auto rank = static_cast<std::size_t>(std::ceil(q / 100.0 * n));
  rank = std::clamp<std::size_t>(rank, 1, values.size());
  return values[rank - 1];
}

inline double mean(const std::vector<double>& values) {
  if (values.empty()) throw EmptyInput("mean of empty sample");
  double s = 0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

/// Population standard deviation (divide by N).
inline double stddev_pop(const std::vector<double>& values) {
  const double m = mean(values);
  double s = 0;
  for (double v : values) s += (v - m) * (v - m);
  return std::sqrt(s / static_cast<double>(values.size()));
}

/// Round half away from zero at `decimals` places.
inline double round_to(double v, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(v * scale) / scale;
}

/// Two-decimal display rounding used by the report tables: rounds at the
/// third decimal first, then at the second (integer arithmetic in between,
/// so 0.755 reliably becomes 0.76).
inline double round2(double v) {
  const auto milli = static_cast<std::int64_t>(std::llround(v * 1000.0));
  const std::int64_t centi = milli >= 0 ? (milli + 5) / 10 : -((-milli + 5) / 10);
  return static_cast<double>(centi) / 100.0;
}

}  // namespace ava
