#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "grho/dataset.hpp"
#include "grho/errors.hpp"

namespace grho {

/// 2x2 summary at one distinct failure time tau. y0/y1 count members with
/// time >= tau, so an observation censored exactly at tau is still at risk
/// there and leaves in the following gap. u0/u1 count censorings in
/// [tau_{j-1}, tau_j); censorings before the first failure land in the first
/// table, censorings at or after the last failure reduce no table.
struct RiskTable {
  double tau;
  int d0 = 0, d1 = 0;  // failures at tau by group
  int y0 = 0, y1 = 0;  // at-risk counts at tau by group
  int u0 = 0, u1 = 0;  // censorings since the previous failure time
};

inline std::vector<RiskTable> risk_tables(const Dataset& ds) {
  std::vector<Observation> sorted = ds.observations;
  std::sort(sorted.begin(), sorted.end(), [](const Observation& a, const Observation& b) {
    if (a.time != b.time) return a.time < b.time;
    return a.status == Status::Failure && b.status == Status::Censored;
  });

  std::vector<RiskTable> tables;
  int rem0 = static_cast<int>(ds.n0);
  int rem1 = static_cast<int>(ds.n1);
  int u0 = 0, u1 = 0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    if (sorted[i].status == Status::Censored) {
      (sorted[i].group == Group::G0 ? u0 : u1)++;
      (sorted[i].group == Group::G0 ? rem0 : rem1)--;
      ++i;
      continue;
    }
    RiskTable t;
    t.tau = sorted[i].time;
    while (i < sorted.size() && sorted[i].time == t.tau && sorted[i].status == Status::Failure) {
      (sorted[i].group == Group::G0 ? t.d0 : t.d1)++;
      ++i;
    }
    t.y0 = rem0;
    t.y1 = rem1;
    t.u0 = u0;
    t.u1 = u1;
    u0 = u1 = 0;
    rem0 -= t.d0;
    rem1 -= t.d1;
    tables.push_back(t);
  }
  if (tables.empty())
    throw Error(ErrorCode::NoFailures, "dataset contains no failure events");
  return tables;
}

}  // namespace grho
