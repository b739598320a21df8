#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "grho/dataset.hpp"
#include "grho/errors.hpp"

namespace grho {

struct ArrangementEntry {
  Group group;
  Status status;
  int ordinal;  // 1-based position in the group's original order

  bool operator==(const ArrangementEntry&) const = default;
};

/// A pooled interleaving of the two samples. Only ranks matter: restricting
/// the sequence to either group must read off that group's original order.
struct Arrangement {
  std::vector<ArrangementEntry> entries;
  std::size_t n0 = 0;
  std::size_t n1 = 0;

  bool operator==(const Arrangement&) const = default;
};

/// All G0 members in order, then all G1 members in order.
inline Arrangement initial_arrangement(std::span<const Status> statuses_g0,
                                       std::span<const Status> statuses_g1) {
  if (statuses_g0.empty()) throw Error(ErrorCode::EmptyGroup, "group G0 is empty");
  if (statuses_g1.empty()) throw Error(ErrorCode::EmptyGroup, "group G1 is empty");
  Arrangement arr;
  arr.n0 = statuses_g0.size();
  arr.n1 = statuses_g1.size();
  arr.entries.reserve(arr.n0 + arr.n1);
  for (std::size_t i = 0; i < statuses_g0.size(); ++i)
    arr.entries.push_back({Group::G0, statuses_g0[i], static_cast<int>(i + 1)});
  for (std::size_t j = 0; j < statuses_g1.size(); ++j)
    arr.entries.push_back({Group::G1, statuses_g1[j], static_cast<int>(j + 1)});
  return arr;
}

/// Interleaving skeleton + per-group status sequences -> arrangement.
inline Arrangement arrangement_from_labels(std::span<const Group> labels,
                                           std::span<const Status> statuses_g0,
                                           std::span<const Status> statuses_g1) {
  Arrangement arr;
  arr.entries.reserve(labels.size());
  std::size_t i0 = 0, i1 = 0;
  for (Group g : labels) {
    if (g == Group::G0) {
      arr.entries.push_back({g, statuses_g0[i0], static_cast<int>(i0 + 1)});
      ++i0;
    } else {
      arr.entries.push_back({g, statuses_g1[i1], static_cast<int>(i1 + 1)});
      ++i1;
    }
  }
  arr.n0 = i0;
  arr.n1 = i1;
  return arr;
}

/// Dataset with times 1..n taken from pooled positions.
inline Dataset to_rank_dataset(const Arrangement& arr) {
  std::vector<Observation> obs;
  obs.reserve(arr.entries.size());
  for (std::size_t i = 0; i < arr.entries.size(); ++i)
    obs.push_back({static_cast<double>(i + 1), arr.entries[i].status, arr.entries[i].group});
  return build_dataset(obs);
}

/// Text form "y1 y2 x1⁺ x2 ...": x/y by group, ⁺ marks a censored member.
inline std::string to_label_string(const Arrangement& arr) {
  std::string out;
  for (const ArrangementEntry& e : arr.entries) {
    if (!out.empty()) out += ' ';
    out += e.group == Group::G0 ? 'x' : 'y';
    out += std::to_string(e.ordinal);
    if (e.status == Status::Censored) out += "⁺";
  }
  return out;
}

}  // namespace grho
