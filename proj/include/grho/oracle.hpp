#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "grho/arrangement.hpp"
#include "grho/errors.hpp"
#include "grho/grho_test.hpp"
#include "grho/imprecise_bounds.hpp"

// Brute-force reference implementations. Everything here recomputes risk sets
// and the product-limit estimate from first principles, on purpose sharing no
// code with the engine it cross-checks.
namespace grho::oracle {

inline constexpr std::size_t kDefaultCap = 20;

inline std::uint64_t interleaving_count(std::size_t n0, std::size_t n1) {
  std::uint64_t c = 1;
  for (std::size_t i = 1; i <= n1; ++i) c = c * (n0 + i) / i;
  return c;
}

/// Lexicographic cursor over all C(n0+n1, n0) group-label sequences, starting
/// from all-G0-first.
class InterleavingIterator {
 public:
  InterleavingIterator(std::size_t n0, std::size_t n1, std::size_t cap = kDefaultCap) {
    if (n0 + n1 > cap)
      throw Error(ErrorCode::CapExceeded,
                  std::to_string(n0 + n1) + " observations exceed the enumeration cap of " +
                      std::to_string(cap));
    labels_.assign(n0, Group::G0);
    labels_.insert(labels_.end(), n1, Group::G1);
  }

  bool next(std::vector<Group>& out) {
    if (done_) return false;
    out = labels_;
    done_ = !std::next_permutation(labels_.begin(), labels_.end());
    return true;
  }

 private:
  std::vector<Group> labels_;
  bool done_ = false;
};

/// Straight-from-definition Z on rank times: at-risk counts recounted per
/// failure, the pooled survival estimate accumulated inline. Returns nullopt
/// when V = 0.
inline std::optional<double> z_from_definition(std::span<const Group> labels,
                                               std::span<const Status> statuses,
                                               const GrhoConfig& cfg) {
  const std::size_t n = labels.size();
  double o = 0.0, e = 0.0, v = 0.0;
  double surv = 1.0;
  for (std::size_t q = 0; q < n; ++q) {
    if (statuses[q] != Status::Failure) continue;
    std::size_t at_risk_g0 = 0;
    for (std::size_t i = q; i < n; ++i)
      if (labels[i] == Group::G0) ++at_risk_g0;
    const double y = static_cast<double>(n - q);
    const double y0 = static_cast<double>(at_risk_g0);
    const double y1 = y - y0;
    const double next = surv * (1.0 - 1.0 / y);
    const double w =
        std::pow(cfg.convention == WeightConvention::LeftLimit ? surv : next, cfg.rho);
    if (labels[q] == Group::G1) o += w;
    e += w * y1 / y;
    v += w * w * y0 * y1 / (y * y);
    surv = next;
  }
  if (!(v > 0.0)) return std::nullopt;
  return (o - e) / std::sqrt(v);
}

struct Extremes {
  double z_min = 0.0;
  double z_max = 0.0;
  Arrangement arg_min;
  Arrangement arg_max;
  std::uint64_t interleavings = 0;  // enumerated (feasible ones, when filtered)
  std::uint64_t evaluated = 0;      // with V > 0
  std::uint64_t degenerate = 0;     // skipped for V = 0
};

namespace detail {

inline void pooled_statuses(std::span<const Group> labels, std::span<const Status> g0,
                            std::span<const Status> g1, std::vector<Status>& out) {
  out.clear();
  std::size_t i0 = 0, i1 = 0;
  for (Group g : labels)
    out.push_back(g == Group::G0 ? g0[i0++] : g1[i1++]);
}

}  // namespace detail

/// Exact min/max Z over every interleaving of the two status sequences.
/// Interleavings with V = 0 are skipped, not errors.
inline Extremes brute_force_extremes(std::span<const Status> statuses_g0,
                                     std::span<const Status> statuses_g1,
                                     const GrhoConfig& cfg, std::size_t cap = kDefaultCap) {
  InterleavingIterator it(statuses_g0.size(), statuses_g1.size(), cap);
  Extremes ext;
  std::vector<Group> labels;
  std::vector<Status> statuses;
  std::vector<Group> best_min, best_max;
  while (it.next(labels)) {
    ++ext.interleavings;
    detail::pooled_statuses(labels, statuses_g0, statuses_g1, statuses);
    const std::optional<double> z = z_from_definition(labels, statuses, cfg);
    if (!z) {
      ++ext.degenerate;
      continue;
    }
    if (ext.evaluated == 0 || *z < ext.z_min) {
      ext.z_min = *z;
      best_min = labels;
    }
    if (ext.evaluated == 0 || *z > ext.z_max) {
      ext.z_max = *z;
      best_max = labels;
    }
    ++ext.evaluated;
  }
  if (ext.evaluated == 0)
    throw Error(ErrorCode::AllDegenerate, "every interleaving has V = 0");
  ext.arg_min = arrangement_from_labels(best_min, statuses_g0, statuses_g1);
  ext.arg_max = arrangement_from_labels(best_max, statuses_g0, statuses_g1);
  return ext;
}

/// Same, restricted to interleavings consistent with the intervals: a ranking
/// is feasible iff no member is placed after one whose whole interval lies
/// strictly above it (closed intervals sharing an endpoint stay swappable).
inline Extremes brute_force_feasible_extremes(std::span<const IntervalObservation> g0,
                                              std::span<const IntervalObservation> g1,
                                              const GrhoConfig& cfg,
                                              std::size_t cap = kDefaultCap) {
  validate_intervals(g0, g1);
  InterleavingIterator it(g0.size(), g1.size(), cap);
  Extremes ext;
  std::vector<Group> labels;
  std::vector<Status> statuses;
  std::vector<Group> best_min, best_max;
  std::vector<Status> st0, st1;
  for (const IntervalObservation& obs : g0) st0.push_back(obs.status);
  for (const IntervalObservation& obs : g1) st1.push_back(obs.status);
  while (it.next(labels)) {
    bool feasible = true;
    double max_lower = -std::numeric_limits<double>::infinity();
    std::size_t i0 = 0, i1 = 0;
    for (Group g : labels) {
      const IntervalObservation& obs = g == Group::G0 ? g0[i0++] : g1[i1++];
      if (obs.upper < max_lower) {
        feasible = false;
        break;
      }
      max_lower = std::max(max_lower, obs.lower);
    }
    if (!feasible) continue;
    ++ext.interleavings;
    detail::pooled_statuses(labels, st0, st1, statuses);
    const std::optional<double> z = z_from_definition(labels, statuses, cfg);
    if (!z) {
      ++ext.degenerate;
      continue;
    }
    if (ext.evaluated == 0 || *z < ext.z_min) {
      ext.z_min = *z;
      best_min = labels;
    }
    if (ext.evaluated == 0 || *z > ext.z_max) {
      ext.z_max = *z;
      best_max = labels;
    }
    ++ext.evaluated;
  }
  if (ext.interleavings == 0)
    throw Error(ErrorCode::NoFeasible, "no interleaving satisfies the intervals");
  if (ext.evaluated == 0)
    throw Error(ErrorCode::AllDegenerate, "every feasible interleaving has V = 0");
  ext.arg_min = arrangement_from_labels(best_min, st0, st1);
  ext.arg_max = arrangement_from_labels(best_max, st0, st1);
  return ext;
}

}  // namespace grho::oracle
