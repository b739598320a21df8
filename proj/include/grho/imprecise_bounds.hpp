#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "grho/arrangement.hpp"
#include "grho/errors.hpp"
#include "grho/grho_test.hpp"

namespace grho {

/// One observation known only up to a closed interval. Within each group the
/// original order is known, so both endpoint sequences must be non-decreasing.
struct IntervalObservation {
  double lower;
  double upper;
  Status status;
};

struct BoundsResult {
  double z_min = 0.0;
  double z_max = 0.0;
  Arrangement arg_min;
  Arrangement arg_max;
  double rho = 0.0;
};

inline void validate_intervals(std::span<const IntervalObservation> g0,
                               std::span<const IntervalObservation> g1) {
  const auto check = [](std::span<const IntervalObservation> g, const char* name) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!std::isfinite(g[i].lower) || !std::isfinite(g[i].upper) || g[i].lower > g[i].upper)
        throw Error(ErrorCode::InvalidInput,
                    std::string(name) + " observation " + std::to_string(i + 1) +
                        " is not a finite interval with lower <= upper");
      if (i > 0 && (g[i].lower < g[i - 1].lower || g[i].upper < g[i - 1].upper))
        throw Error(ErrorCode::InconsistentWithinGroupOrder,
                    std::string(name) + " observations " + std::to_string(i) + " and " +
                        std::to_string(i + 1) + ": endpoint sequences must be non-decreasing");
    }
  };
  check(g0, "G0");
  check(g1, "G1");
}

/// The two extreme interleavings. For the maximum, every G1 member is placed
/// at its lower endpoint and every G0 member at its upper endpoint, with G1
/// winning exact value ties; the minimum mirrors this. Pairs forced apart by
/// disjoint intervals keep their order in both; pairs of identical degenerate
/// intervals across groups admit no strict order at all and are rejected.
inline std::pair<Arrangement, Arrangement> extreme_arrangements(
    std::span<const IntervalObservation> g0, std::span<const IntervalObservation> g1) {
  validate_intervals(g0, g1);
  for (std::size_t i = 0; i < g0.size(); ++i)
    for (std::size_t j = 0; j < g1.size(); ++j)
      if (g0[i].lower == g0[i].upper && g1[j].lower == g1[j].upper &&
          g0[i].lower == g1[j].lower)
        throw Error(ErrorCode::ForcedTie,
                    "x" + std::to_string(i + 1) + " and y" + std::to_string(j + 1) +
                        " are identical degenerate intervals");

  const auto build = [&](bool maximize) {
    struct Keyed {
      double value;
      int group_rank;  // 0 sorts first on value ties
      int ordinal;
      ArrangementEntry entry;
    };
    std::vector<Keyed> keyed;
    keyed.reserve(g0.size() + g1.size());
    for (std::size_t i = 0; i < g0.size(); ++i)
      keyed.push_back({maximize ? g0[i].upper : g0[i].lower, maximize ? 1 : 0,
                       static_cast<int>(i),
                       {Group::G0, g0[i].status, static_cast<int>(i + 1)}});
    for (std::size_t j = 0; j < g1.size(); ++j)
      keyed.push_back({maximize ? g1[j].lower : g1[j].upper, maximize ? 0 : 1,
                       static_cast<int>(j),
                       {Group::G1, g1[j].status, static_cast<int>(j + 1)}});
    std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
      if (a.value != b.value) return a.value < b.value;
      if (a.group_rank != b.group_rank) return a.group_rank < b.group_rank;
      return a.ordinal < b.ordinal;
    });
    Arrangement arr;
    arr.n0 = g0.size();
    arr.n1 = g1.size();
    arr.entries.reserve(keyed.size());
    for (const Keyed& k : keyed) arr.entries.push_back(k.entry);
    return arr;
  };
  return {build(false), build(true)};
}

/// Minimum and maximum attainable Z over the interleavings consistent with
/// the intervals, with the witnessing arrangements.
inline BoundsResult bounds(std::span<const IntervalObservation> g0,
                           std::span<const IntervalObservation> g1, const GrhoConfig& cfg) {
  auto [arg_min, arg_max] = extreme_arrangements(g0, g1);
  BoundsResult res;
  res.z_min = z_statistic(components(to_rank_dataset(arg_min), cfg));
  res.z_max = z_statistic(components(to_rank_dataset(arg_max), cfg));
  res.arg_min = std::move(arg_min);
  res.arg_max = std::move(arg_max);
  res.rho = cfg.rho;
  return res;
}

}  // namespace grho
