#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "grho/swap_chain.hpp"
#include "test_support.hpp"

using namespace grho;
using Catch::Matchers::WithinAbs;
using testsupport::sts;

namespace {

const std::vector<Status> kG0 = sts("10110");
const std::vector<Status> kG1 = sts("11010");

}  // namespace

TEST_CASE("initial arrangement lines the groups up in order") {
  const Arrangement arr = initial_arrangement(kG0, kG1);
  REQUIRE(arr.entries.size() == 10);
  REQUIRE(arr.n0 == 5);
  REQUIRE(arr.n1 == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    REQUIRE(arr.entries[i].group == Group::G0);
    REQUIRE(arr.entries[i].ordinal == static_cast<int>(i + 1));
    REQUIRE(arr.entries[i + 5].group == Group::G1);
  }
  REQUIRE(to_label_string(arr) == "x1 x2⁺ x3 x4 x5⁺ y1 y2 y3⁺ y4 y5⁺");

  const Arrangement tiny = initial_arrangement(sts("1"), sts("1"));
  REQUIRE(to_label_string(tiny) == "x1 y1");

  REQUIRE_THROWS_AS(initial_arrangement(std::vector<Status>{}, sts("1")), Error);
}

TEST_CASE("classification by pair statuses") {
  // x5 censored right before failure y1
  const Arrangement arr = initial_arrangement(kG0, kG1);
  const auto [scenario, subcase] = classify_swap(arr, 5);
  REQUIRE(scenario == Scenario::S3);
  REQUIRE(subcase == "S3-iia");

  Arrangement cc = initial_arrangement(sts("0"), sts("0"));
  REQUIRE(classify_swap(cc, 1).first == Scenario::S1);
  REQUIRE(classify_swap(cc, 1).second == "S1");

  Arrangement ff = initial_arrangement(sts("1"), sts("1"));
  REQUIRE(classify_swap(ff, 1) == std::pair{Scenario::S4, std::string("S4-i")});

  REQUIRE_THROWS_AS(classify_swap(arr, 1), Error);   // (G0, G0) pair
  REQUIRE_THROWS_AS(classify_swap(arr, 10), Error);  // out of range
  try {
    classify_swap(arr, 6);  // (G1, G1) pair
    FAIL("expected NotAdjacentPair");
  } catch (const Error& e) {
    REQUIRE(e.code() == ErrorCode::NotAdjacentPair);
  }
}

TEST_CASE("canonical chain on the ten-observation fixture") {
  const ChainResult chain = generate_chain(kG0, kG1, GrhoConfig{0.5, WeightConvention::LeftLimit});
  REQUIRE(chain.steps.size() == 25);
  REQUIRE_THAT(chain.z_initial, WithinAbs(-2.1901135111, 1e-8));
  REQUIRE_THAT(chain.steps.back().z_after, WithinAbs(2.0897838423, 1e-8));

  // continuity: each step starts where the previous one ended
  double z = chain.z_initial;
  for (const SwapStep& step : chain.steps) {
    REQUIRE(step.z_before == z);
    z = step.z_after;
  }

  // every arrangement keeps each group's own order
  for (const SwapStep& step : chain.steps) {
    int last_g0 = 0, last_g1 = 0;
    for (const ArrangementEntry& e : step.arrangement_after.entries) {
      int& last = e.group == Group::G0 ? last_g0 : last_g1;
      REQUIRE(e.ordinal == last + 1);
      last = e.ordinal;
    }
  }

  // the known censored-censored swaps, and no others
  std::vector<std::size_t> s1;
  for (const SwapStep& step : chain.steps)
    if (step.scenario == Scenario::S1) s1.push_back(step.index);
  REQUIRE(s1 == std::vector<std::size_t>{11, 14, 21, 24});

  // final arrangement is all-G1-first with within-group order intact
  const Arrangement& last = chain.steps.back().arrangement_after;
  REQUIRE(to_label_string(last) == "y1 y2 y3⁺ y4 y5⁺ x1 x2⁺ x3 x4 x5⁺");
}

TEST_CASE("chain length is n0*n1") {
  REQUIRE(generate_chain(sts("111"), sts("111"), GrhoConfig{}).steps.size() == 9);
  REQUIRE(generate_chain(sts("11"), sts("101"), GrhoConfig{}).steps.size() == 6);
}

TEST_CASE("single swap of two failures flips the sign of z") {
  const ChainResult chain = generate_chain(sts("1"), sts("1"), GrhoConfig{0.5});
  REQUIRE(chain.steps.size() == 1);
  REQUIRE_THAT(chain.steps[0].z_after, WithinAbs(-chain.z_initial, 1e-14));
}

TEST_CASE("degenerate variance aborts with the arrangement index") {
  try {
    generate_chain(sts("0"), sts("1"), GrhoConfig{});
    FAIL("expected DegenerateVariance");
  } catch (const Error& e) {
    REQUIRE(e.code() == ErrorCode::DegenerateVariance);
    REQUIRE(std::string(e.what()).find("arrangement 1") != std::string::npos);
  }
}

TEST_CASE("verify_monotone passes the fixture chain at every rho") {
  for (int i = 0; i <= 10; ++i) {
    const double rho = i / 10.0;
    const ChainResult chain = generate_chain(kG0, kG1, GrhoConfig{rho});
    const VerificationReport rep = verify_monotone(chain);
    REQUIRE(rep.steps == 25);
    REQUIRE(rep.s1_steps == 4);
    REQUIRE(rep.max_s1_gap == 0.0);
    REQUIRE(rep.max_decrease <= 0.0);
    REQUIRE(rep.max_identity_residual <= 1e-12);
  }
}

TEST_CASE("S1 swaps leave O, E and V unchanged, not merely z") {
  const ChainResult chain = generate_chain(kG0, kG1, GrhoConfig{0.5});
  int seen = 0;
  for (const SwapStep& step : chain.steps) {
    if (step.scenario != Scenario::S1) continue;
    ++seen;
    REQUIRE(step.num_before == step.num_after);
    REQUIRE(step.var_before == step.var_after);
    REQUIRE(step.z_before == step.z_after);
  }
  REQUIRE(seen == 4);
}

TEST_CASE("equal status sequences make the chain antisymmetric end to end") {
  testsupport::Rng rng(31);
  int checked = 0;
  while (checked < 50) {
    const std::size_t n = 1 + rng.below(5);
    auto [g0, g1] = testsupport::random_statuses(rng, n, n);
    if (std::none_of(g0.begin(), g0.end(), [](Status s) { return s == Status::Failure; }))
      continue;  // both groups share g0, which must contribute a failure
    try {
      const ChainResult chain = generate_chain(g0, g0, GrhoConfig{0.5});
      REQUIRE_THAT(chain.steps.back().z_after, WithinAbs(-chain.z_initial, 1e-12));
      ++checked;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateVariance) throw;
    }
    (void)g1;
  }
}

TEST_CASE("monotone over random instances and rho values") {
  testsupport::Rng rng(32);
  int checked = 0;
  while (checked < 150) {
    const std::size_t n0 = 1 + rng.below(6);
    const std::size_t n1 = 1 + rng.below(6);
    auto [g0, g1] = testsupport::random_statuses(rng, n0, n1);
    const double rho = std::vector<double>{0.0, 0.5, 1.0, 2.0}[rng.below(4)];
    try {
      const ChainResult chain = generate_chain(g0, g1, GrhoConfig{rho});
      const VerificationReport rep = verify_monotone(chain);
      REQUIRE(rep.steps == n0 * n1);
      ++checked;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateVariance) throw;
    }
  }
}

TEST_CASE("verify_monotone flags a decreasing step") {
  ChainResult chain = generate_chain(kG0, kG1, GrhoConfig{0.5});
  chain.steps[7].z_after = chain.steps[7].z_before - 1.0;
  REQUIRE_THROWS_AS(verify_monotone(chain), MonotonicityViolation);
  try {
    verify_monotone(chain);
  } catch (const MonotonicityViolation& e) {
    REQUIRE(e.step_index == 8);
  }
  REQUIRE_THROWS_AS(verify_monotone(std::span<const SwapStep>{}), Error);
}

TEST_CASE("sandwich diagnostics are applicable only on same-sign numerator steps") {
  const ChainResult chain = generate_chain(kG0, kG1, GrhoConfig{0.5});
  int applicable = 0;
  for (const SwapStep& step : chain.steps) {
    const SandwichDiagnostic d = sandwich_diagnostic(step);
    if (!d.applicable) continue;
    ++applicable;
    const double rise = step.z_after - step.z_before;
    REQUIRE_THAT(d.d2, WithinAbs(d.d4 + rise, 1e-12));
    REQUIRE_THAT(d.d3, WithinAbs(d.d1 + rise, 1e-12));
    REQUIRE(d.d3 > d.d1);
    REQUIRE(d.d2 > d.d4);
  }
  REQUIRE(applicable > 0);
}
