#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "grho/arrangement.hpp"
#include "grho/errors.hpp"
#include "grho/grho_test.hpp"

namespace grho {

/// Swap classification by the censoring statuses of the exchanged pair
/// (G0 member, G1 member): S1 both censored, S2 (failure, censored),
/// S3 (censored, failure), S4 both failures.
enum class Scenario { S1, S2, S3, S4 };

inline const char* scenario_name(Scenario s) {
  switch (s) {
    case Scenario::S1: return "S1";
    case Scenario::S2: return "S2";
    case Scenario::S3: return "S3";
    case Scenario::S4: return "S4";
  }
  return "?";
}

class MonotonicityViolation : public Error {
 public:
  MonotonicityViolation(std::size_t step_index, Scenario scenario, const std::string& message)
      : Error(ErrorCode::MonotonicityViolation,
              message + " (step " + std::to_string(step_index) + ", " +
                  scenario_name(scenario) + ")"),
        step_index(step_index),
        scenario(scenario) {}

  std::size_t step_index;
  Scenario scenario;
};

/// One adjacent swap: the G0 member at `position` (1-based, pooled) exchanged
/// with the G1 member immediately after it. Carries the (O-E, V) aggregates
/// of both sides so the verifier can re-derive everything it checks.
struct SwapStep {
  std::size_t index = 0;     // 1..n0*n1
  std::size_t position = 0;  // pooled index of the pair's G0 member before the swap
  Scenario scenario = Scenario::S1;
  std::string subcase;       // "S1", "S2-iia", "S4-i", ...
  double z_before = 0.0;
  double z_after = 0.0;
  double num_before = 0.0;   // O - E before the swap
  double var_before = 0.0;
  double num_after = 0.0;
  double var_after = 0.0;
  Arrangement arrangement_after;
};

struct ChainResult {
  Arrangement initial;
  double z_initial = 0.0;
  double rho = 0.0;
  WeightConvention convention = WeightConvention::LeftLimit;
  std::vector<SwapStep> steps;  // exactly n0*n1 of them
};

/// Scenario plus sub-case for the adjacent pair whose G0 member sits at
/// `position` (1-based). The sub-case compares the groups' at-risk counts
/// r0/r1 taken at the pair: the variance term moves up under the swap exactly
/// when G1's risk count dominates (ties possible only in S4, where equal
/// counts leave it unchanged).
inline std::pair<Scenario, std::string> classify_swap(const Arrangement& arr,
                                                      std::size_t position) {
  if (position < 1 || position >= arr.entries.size())
    throw Error(ErrorCode::NotAdjacentPair,
                "no adjacent pair at position " + std::to_string(position));
  const ArrangementEntry& x = arr.entries[position - 1];
  const ArrangementEntry& y = arr.entries[position];
  if (x.group != Group::G0 || y.group != Group::G1)
    throw Error(ErrorCode::NotAdjacentPair,
                "pair at position " + std::to_string(position) + " is not (G0, G1)");

  if (x.status == Status::Censored && y.status == Status::Censored)
    return {Scenario::S1, "S1"};

  int r0 = 0, r1 = 0;
  for (std::size_t i = position - 1; i < arr.entries.size(); ++i)
    (arr.entries[i].group == Group::G0 ? r0 : r1)++;

  Scenario scenario;
  std::string sub;
  if (x.status == Status::Failure && y.status == Status::Censored) {
    scenario = Scenario::S2;
    sub = r1 > r0 ? "iia" : "iib";
  } else if (x.status == Status::Censored) {
    scenario = Scenario::S3;
    sub = r1 >= r0 ? "iia" : "iib";
  } else {
    scenario = Scenario::S4;
    sub = r0 == r1 ? "i" : (r1 > r0 ? "iia" : "iib");
  }
  return {scenario, std::string(scenario_name(scenario)) + "-" + sub};
}

/// The canonical n0*n1-step chain from all-G0-first to all-G1-first: y1
/// bubbles left one adjacent swap at a time past every G0 member, then y2
/// down to position 2, and so on. Each arrangement is scored on rank times.
inline ChainResult generate_chain(std::span<const Status> statuses_g0,
                                  std::span<const Status> statuses_g1,
                                  const GrhoConfig& cfg) {
  ChainResult chain;
  chain.initial = initial_arrangement(statuses_g0, statuses_g1);
  chain.rho = cfg.rho;
  chain.convention = cfg.convention;

  const auto evaluate = [&cfg](const Arrangement& arr, std::size_t arrangement_index) {
    GrhoResult r = components(to_rank_dataset(arr), cfg);
    if (r.degenerate_variance)
      throw Error(ErrorCode::DegenerateVariance,
                  "V = 0 at chain arrangement " + std::to_string(arrangement_index));
    return r;
  };

  Arrangement arr = chain.initial;
  GrhoResult before = evaluate(arr, 1);
  chain.z_initial = before.Z;

  const std::size_t n0 = arr.n0;
  const std::size_t n1 = arr.n1;
  chain.steps.reserve(n0 * n1);
  std::size_t index = 0;
  for (std::size_t j = 0; j < n1; ++j) {
    std::size_t pos = n0 + j;  // 0-based index of y_{j+1}; its G0 partner is at pos-1
    for (std::size_t s = 0; s < n0; ++s, --pos) {
      ++index;
      auto [scenario, subcase] = classify_swap(arr, pos);
      std::swap(arr.entries[pos - 1], arr.entries[pos]);
      GrhoResult after = evaluate(arr, index + 1);
      SwapStep step;
      step.index = index;
      step.position = pos;
      step.scenario = scenario;
      step.subcase = std::move(subcase);
      step.z_before = before.Z;
      step.z_after = after.Z;
      step.num_before = before.O - before.E;
      step.var_before = before.V;
      step.num_after = after.O - after.E;
      step.var_after = after.V;
      step.arrangement_after = arr;
      chain.steps.push_back(std::move(step));
      before = std::move(after);
    }
  }
  return chain;
}

/// The four differences sandwiching z_before and z_after between
/// (O-E_B)/sqrt(V_A) and (O-E_A)/sqrt(V_B). Applicable exactly when both
/// numerators share a sign and the variance moved against it.
struct SandwichDiagnostic {
  double d1 = 0.0, d2 = 0.0, d3 = 0.0, d4 = 0.0;
  bool applicable = false;
};

inline SandwichDiagnostic sandwich_diagnostic(const SwapStep& step) {
  const double nb = step.num_before;
  const double na = step.num_after;
  const double sb = std::sqrt(step.var_before);
  const double sa = std::sqrt(step.var_after);
  SandwichDiagnostic d;
  d.applicable = (nb > 0.0 && na > 0.0 && step.var_before < step.var_after) ||
                 (nb < 0.0 && na < 0.0 && step.var_before > step.var_after);
  d.d1 = nb / sb - nb / sa;
  d.d2 = na / sb - nb / sb;
  d.d3 = na / sa - nb / sa;
  d.d4 = na / sb - na / sa;
  return d;
}

struct VerificationReport {
  std::size_t steps = 0;
  std::size_t s1_steps = 0;
  std::size_t sandwich_applicable = 0;
  double max_decrease = -std::numeric_limits<double>::infinity();  // max z_before - z_after
  double max_s1_gap = 0.0;
  double max_identity_residual = 0.0;
  double min_sandwich_margin = std::numeric_limits<double>::infinity();
};

/// Checks z_before <= z_after + tol at every step, exact equality (within
/// tol) on S1 steps, and on every applicable step the sandwich inequalities
/// D3 > D1, D2 > D4 plus the decomposition identities
/// D2 = D4 + (z_after - z_before) and D3 = D1 + (z_after - z_before), both to
/// 1e-12. Any breach throws MonotonicityViolation: it signals a bug, not bad
/// input.
inline VerificationReport verify_monotone(std::span<const SwapStep> steps, double tol = 1e-9) {
  if (steps.empty()) throw Error(ErrorCode::InvalidInput, "empty chain");
  constexpr double kIdentityTol = 1e-12;
  VerificationReport rep;
  for (const SwapStep& step : steps) {
    ++rep.steps;
    const double rise = step.z_after - step.z_before;
    rep.max_decrease = std::max(rep.max_decrease, -rise);
    if (step.z_before > step.z_after + tol)
      throw MonotonicityViolation(step.index, step.scenario,
                                  "z decreased by " + std::to_string(-rise));
    if (step.scenario == Scenario::S1) {
      ++rep.s1_steps;
      rep.max_s1_gap = std::max(rep.max_s1_gap, std::abs(rise));
      if (std::abs(rise) > tol)
        throw MonotonicityViolation(step.index, step.scenario,
                                    "S1 swap moved z by " + std::to_string(rise));
    }
    const SandwichDiagnostic d = sandwich_diagnostic(step);
    if (!d.applicable) continue;
    ++rep.sandwich_applicable;
    const double residual2 = std::abs(d.d2 - (d.d4 + rise));
    const double residual3 = std::abs(d.d3 - (d.d1 + rise));
    rep.max_identity_residual = std::max({rep.max_identity_residual, residual2, residual3});
    rep.min_sandwich_margin = std::min({rep.min_sandwich_margin, d.d3 - d.d1, d.d2 - d.d4});
    if (residual2 > kIdentityTol || residual3 > kIdentityTol)
      throw MonotonicityViolation(step.index, step.scenario,
                                  "sandwich decomposition identity failed");
    if (!(d.d3 > d.d1 - kIdentityTol) || !(d.d2 > d.d4 - kIdentityTol))
      throw MonotonicityViolation(step.index, step.scenario,
                                  "sandwich inequalities D3 > D1, D2 > D4 failed");
  }
  return rep;
}

inline VerificationReport verify_monotone(const ChainResult& chain, double tol = 1e-9) {
  return verify_monotone(std::span<const SwapStep>(chain.steps), tol);
}

}  // namespace grho
