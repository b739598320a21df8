#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "grho/dataset.hpp"
#include "grho/risk_table.hpp"

namespace grho {

struct KMStep {
  double time;
  double survival;
};

/// Pooled-sample product-limit estimate as a right-continuous step function.
/// The value before the first step is exactly 1.
struct KMCurve {
  std::vector<KMStep> steps;  // ascending time, non-increasing survival
};

enum class CurveSide { LeftLimit, RightContinuous };

namespace detail {

/// Product-limit values from precomputed risk tables. The running product is
/// kept as a reduced integer fraction so telescoping cancellations are exact
/// (with no censoring the j-th value is bit-for-bit (n-j)/n); it falls back
/// to a double scale factor if the reduced terms outgrow 2^53.
inline KMCurve km_from_tables(const std::vector<RiskTable>& tables) {
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 53;
  KMCurve curve;
  curve.steps.reserve(tables.size());
  double scale = 1.0;
  std::uint64_t num = 1, den = 1;
  for (const RiskTable& t : tables) {
    const std::uint64_t y = static_cast<std::uint64_t>(t.y0) + static_cast<std::uint64_t>(t.y1);
    const std::uint64_t d = static_cast<std::uint64_t>(t.d0) + static_cast<std::uint64_t>(t.d1);
    const std::uint64_t survivors = y - d;
    if (num > kLimit / std::max<std::uint64_t>(survivors, 1) || den > kLimit / y) {
      scale *= static_cast<double>(num) / static_cast<double>(den);
      num = den = 1;
    }
    num *= survivors;
    den *= y;
    const std::uint64_t g = std::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    curve.steps.push_back({t.tau, scale * (static_cast<double>(num) / static_cast<double>(den))});
  }
  return curve;
}

}  // namespace detail

inline KMCurve km_estimate(const Dataset& ds) {
  return detail::km_from_tables(risk_tables(ds));
}

/// Curve value at t: the left limit S(t-) or the right-continuous S(t).
inline double km_at(const KMCurve& curve, double t, CurveSide side) {
  auto it = (side == CurveSide::LeftLimit)
                ? std::lower_bound(curve.steps.begin(), curve.steps.end(), t,
                                   [](const KMStep& s, double v) { return s.time < v; })
                : std::upper_bound(curve.steps.begin(), curve.steps.end(), t,
                                   [](double v, const KMStep& s) { return v < s.time; });
  if (it == curve.steps.begin()) return 1.0;
  return std::prev(it)->survival;
}

}  // namespace grho
