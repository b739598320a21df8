#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "grho/arrangement.hpp"
#include "grho/errors.hpp"
#include "grho/grho_test.hpp"
#include "grho/imprecise_bounds.hpp"
#include "grho/oracle.hpp"
#include "grho/swap_chain.hpp"

// Randomized self-check suites. The same runners back the CLI `verify`
// command and the acceptance harness; all draws come from the seed, so a
// fixed (seed, options) pair replays the exact same instances.
namespace grho::verify {

struct SuiteOptions {
  std::uint64_t seed = 42;
  std::size_t cases = 200;      // instances to accumulate (skips excluded)
  std::size_t max_group = 6;    // per-group size bound
  std::size_t max_total = 10;   // pooled size bound (bounds suite)
  std::vector<double> chain_rhos = {0.0, 0.5, 1.0, 2.0};
  std::vector<double> bounds_rhos = {0.0, 0.5, 1.0};
  double tol_monotone = 1e-9;
  double tol_agreement = 1e-10;
};

struct SuiteReport {
  std::string name;
  std::size_t cases = 0;    // instances checked
  std::size_t checks = 0;   // individual comparisons/steps verified
  std::size_t skipped = 0;  // degenerate or otherwise unusable draws
  bool passed = true;
  std::string failure;      // first failure, empty when passed
};

namespace detail {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::size_t below(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }

  double uniform(double lo, double hi) {
    const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
  }

  bool coin() { return (gen_() & 1) != 0; }

 private:
  std::mt19937_64 gen_;
};

/// Status sequences with at least one pooled failure.
inline std::pair<std::vector<Status>, std::vector<Status>> random_statuses(Rng& rng,
                                                                           std::size_t n0,
                                                                           std::size_t n1) {
  while (true) {
    std::vector<Status> g0, g1;
    bool any_failure = false;
    for (std::size_t i = 0; i < n0; ++i) {
      g0.push_back(rng.coin() ? Status::Failure : Status::Censored);
      any_failure |= g0.back() == Status::Failure;
    }
    for (std::size_t j = 0; j < n1; ++j) {
      g1.push_back(rng.coin() ? Status::Failure : Status::Censored);
      any_failure |= g1.back() == Status::Failure;
    }
    if (any_failure) return {std::move(g0), std::move(g1)};
  }
}

/// A valid interval group: sorting lower and upper endpoint draws separately
/// keeps both sequences non-decreasing while pairing lower[i] <= upper[i].
inline std::vector<IntervalObservation> random_interval_group(Rng& rng, std::size_t n) {
  std::vector<double> lowers, uppers;
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = std::round(rng.uniform(0.0, 10.0) * 10.0) / 10.0;
    const double width = std::round(rng.uniform(0.0, 6.0) * 10.0) / 10.0;
    lowers.push_back(lo);
    uppers.push_back(lo + width);
  }
  std::sort(lowers.begin(), lowers.end());
  std::sort(uppers.begin(), uppers.end());
  std::vector<IntervalObservation> group;
  for (std::size_t i = 0; i < n; ++i)
    group.push_back({lowers[i], uppers[i], rng.coin() ? Status::Failure : Status::Censored});
  return group;
}

inline std::string describe(std::span<const Status> g0, std::span<const Status> g1) {
  std::string out = "G0=";
  for (Status s : g0) out += s == Status::Failure ? '1' : '0';
  out += " G1=";
  for (Status s : g1) out += s == Status::Failure ? '1' : '0';
  return out;
}

}  // namespace detail

/// Every canonical chain step is non-decreasing in Z, S1 steps leave Z
/// unchanged, and all applicable sandwich diagnostics hold.
inline SuiteReport run_monotonicity_suite(const SuiteOptions& opts) {
  SuiteReport rep;
  rep.name = "monotonicity";
  detail::Rng rng(opts.seed);
  while (rep.cases < opts.cases) {
    const std::size_t n0 = 1 + rng.below(opts.max_group);
    const std::size_t n1 = 1 + rng.below(opts.max_group);
    auto [g0, g1] = detail::random_statuses(rng, n0, n1);
    std::vector<ChainResult> chains;
    try {
      for (double rho : opts.chain_rhos)
        chains.push_back(generate_chain(g0, g1, GrhoConfig{rho, WeightConvention::LeftLimit}));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::DegenerateVariance) {
        ++rep.skipped;
        continue;
      }
      throw;
    }
    for (const ChainResult& chain : chains) {
      try {
        const VerificationReport vr = verify_monotone(chain, opts.tol_monotone);
        rep.checks += vr.steps;
      } catch (const MonotonicityViolation& e) {
        rep.passed = false;
        rep.failure = std::string(e.what()) + " [rho=" + std::to_string(chain.rho) + ", " +
                      detail::describe(g0, g1) + "]";
        return rep;
      }
    }
    ++rep.cases;
  }
  return rep;
}

/// Engine Z and the straight-from-definition oracle agree on every
/// interleaving, and the chain endpoints attain the brute-force extremes.
inline SuiteReport run_oracle_agreement_suite(const SuiteOptions& opts) {
  SuiteReport rep;
  rep.name = "oracle agreement";
  detail::Rng rng(opts.seed);
  std::vector<Group> labels;
  std::vector<Status> pooled;
  while (rep.cases < opts.cases) {
    const std::size_t n0 = 1 + rng.below(opts.max_group);
    const std::size_t n1 = 1 + rng.below(opts.max_group);
    auto [g0, g1] = detail::random_statuses(rng, n0, n1);
    for (double rho : opts.chain_rhos) {
      const GrhoConfig cfg{rho, WeightConvention::LeftLimit};
      oracle::InterleavingIterator it(n0, n1);
      while (it.next(labels)) {
        oracle::detail::pooled_statuses(labels, g0, g1, pooled);
        const auto reference = oracle::z_from_definition(labels, pooled, cfg);
        const GrhoResult engine =
            components(to_rank_dataset(arrangement_from_labels(labels, g0, g1)), cfg);
        ++rep.checks;
        if (reference.has_value() == engine.degenerate_variance) {
          rep.passed = false;
          rep.failure = "degenerate-variance disagreement [" + detail::describe(g0, g1) + "]";
          return rep;
        }
        if (reference && std::abs(*reference - engine.Z) > opts.tol_agreement) {
          rep.passed = false;
          rep.failure = "oracle/engine z mismatch of " +
                        std::to_string(std::abs(*reference - engine.Z)) + " [rho=" +
                        std::to_string(rho) + ", " + detail::describe(g0, g1) + "]";
          return rep;
        }
      }
      try {
        const ChainResult chain = generate_chain(g0, g1, cfg);
        const oracle::Extremes ext = oracle::brute_force_extremes(g0, g1, cfg);
        const double z_first = chain.z_initial;
        const double z_last = chain.steps.back().z_after;
        if (std::abs(z_first - ext.z_min) > opts.tol_agreement ||
            std::abs(z_last - ext.z_max) > opts.tol_agreement) {
          rep.passed = false;
          rep.failure = "chain endpoints differ from brute-force extremes [rho=" +
                        std::to_string(rho) + ", " + detail::describe(g0, g1) + "]";
          return rep;
        }
        rep.checks += 2;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateVariance && e.code() != ErrorCode::AllDegenerate)
          throw;
        ++rep.skipped;  // chain or every interleaving degenerate; agreement already checked
      }
    }
    ++rep.cases;
  }
  return rep;
}

/// bounds() is sound and sharp: it reproduces the exact feasible extremes,
/// and its witnesses respect every forced pairwise order.
inline SuiteReport run_bounds_sharpness_suite(const SuiteOptions& opts) {
  SuiteReport rep;
  rep.name = "bounds sharpness";
  detail::Rng rng(opts.seed);
  while (rep.cases < opts.cases) {
    const std::size_t n0 = 1 + rng.below(opts.max_total - 1);
    const std::size_t n1 = 1 + rng.below(opts.max_total - n0);
    std::vector<IntervalObservation> g0 = detail::random_interval_group(rng, n0);
    std::vector<IntervalObservation> g1 = detail::random_interval_group(rng, n1);
    if (std::none_of(g0.begin(), g0.end(),
                     [](const IntervalObservation& o) { return o.status == Status::Failure; }) &&
        std::none_of(g1.begin(), g1.end(),
                     [](const IntervalObservation& o) { return o.status == Status::Failure; })) {
      ++rep.skipped;
      continue;
    }
    bool usable = true;
    for (double rho : opts.bounds_rhos) {
      const GrhoConfig cfg{rho, WeightConvention::LeftLimit};
      BoundsResult got;
      oracle::Extremes want;
      try {
        got = bounds(g0, g1, cfg);
        want = oracle::brute_force_feasible_extremes(g0, g1, cfg);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::ForcedTie || e.code() == ErrorCode::DegenerateVariance ||
            e.code() == ErrorCode::AllDegenerate) {
          usable = false;
          break;
        }
        throw;
      }
      ++rep.checks;
      if (std::abs(got.z_min - want.z_min) > opts.tol_agreement ||
          std::abs(got.z_max - want.z_max) > opts.tol_agreement) {
        rep.passed = false;
        rep.failure = "bounds differ from feasible brute force by up to " +
                      std::to_string(std::max(std::abs(got.z_min - want.z_min),
                                              std::abs(got.z_max - want.z_max))) +
                      " [rho=" + std::to_string(rho) + "]";
        return rep;
      }
      if (got.z_min > got.z_max) {
        rep.passed = false;
        rep.failure = "z_min exceeds z_max";
        return rep;
      }
    }
    if (!usable) {
      ++rep.skipped;
      continue;
    }
    ++rep.cases;
  }
  return rep;
}

}  // namespace grho::verify
