#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "grho/errors.hpp"

namespace grho {

enum class Status { Failure, Censored };
enum class Group { G0, G1 };

struct Observation {
  double time;
  Status status;
  Group group;
};

/// Two-sample right-censored data. `strict` marks pairwise-distinct times;
/// the swap-chain and bounds machinery require it, the plain Kaplan-Meier and
/// risk-table computations do not.
struct Dataset {
  std::vector<Observation> observations;  // input order preserved
  std::size_t n0 = 0;
  std::size_t n1 = 0;
  bool strict = false;
};

inline Dataset build_dataset(std::span<const Observation> records) {
  if (records.empty()) throw Error(ErrorCode::EmptyGroup, "no observations");
  Dataset ds;
  ds.observations.assign(records.begin(), records.end());
  std::vector<double> times;
  times.reserve(ds.observations.size());
  for (const Observation& obs : ds.observations) {
    if (!std::isfinite(obs.time) || obs.time < 0.0)
      throw Error(ErrorCode::NegativeTime,
                  "observation time must be finite and >= 0, got " +
                      std::to_string(obs.time));
    (obs.group == Group::G0 ? ds.n0 : ds.n1)++;
    times.push_back(obs.time);
  }
  if (ds.n0 == 0) throw Error(ErrorCode::EmptyGroup, "group G0 is empty");
  if (ds.n1 == 0) throw Error(ErrorCode::EmptyGroup, "group G1 is empty");
  std::sort(times.begin(), times.end());
  ds.strict = std::adjacent_find(times.begin(), times.end()) == times.end();
  return ds;
}

inline Dataset build_dataset(std::initializer_list<Observation> records) {
  return build_dataset(std::span<const Observation>(records.begin(), records.size()));
}

}  // namespace grho
