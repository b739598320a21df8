#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <limits>
#include <vector>

#include "grho/dataset.hpp"
#include "grho/risk_table.hpp"
#include "test_support.hpp"

using namespace grho;
using testsupport::cens;
using testsupport::fail;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a grho::Error");
  return ErrorCode::InvalidInput;
}

}  // namespace

TEST_CASE("build_dataset rejects one-group input") {
  REQUIRE(code_of([] { build_dataset({fail(1, 0)}); }) == ErrorCode::EmptyGroup);
  REQUIRE(code_of([] { build_dataset({fail(1, 1), cens(2, 1)}); }) == ErrorCode::EmptyGroup);
  REQUIRE(code_of([] { build_dataset(std::vector<Observation>{}); }) == ErrorCode::EmptyGroup);
}

TEST_CASE("build_dataset rejects invalid times") {
  REQUIRE(code_of([] { build_dataset({fail(-1, 0), fail(1, 1)}); }) == ErrorCode::NegativeTime);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  REQUIRE(code_of([=] { build_dataset({fail(nan, 0), fail(1, 1)}); }) == ErrorCode::NegativeTime);
  const double inf = std::numeric_limits<double>::infinity();
  REQUIRE(code_of([=] { build_dataset({fail(1, 0), cens(inf, 1)}); }) == ErrorCode::NegativeTime);
}

TEST_CASE("build_dataset counts groups and detects strictness") {
  const Dataset ds = build_dataset({fail(1, 0), cens(2, 0), fail(3, 0), fail(4, 0), cens(5, 0),
                                    fail(6, 1), fail(7, 1), cens(8, 1), fail(9, 1), cens(10, 1)});
  REQUIRE(ds.n0 == 5);
  REQUIRE(ds.n1 == 5);
  REQUIRE(ds.strict);
  REQUIRE(ds.observations.size() == 10);
  REQUIRE(ds.observations.front().time == 1.0);  // input order preserved

  const Dataset tied = build_dataset({fail(1, 0), fail(1, 1)});
  REQUIRE_FALSE(tied.strict);
}

TEST_CASE("risk_tables on the ten-observation fixture") {
  const Dataset ds = build_dataset({fail(1, 0), cens(2, 0), fail(3, 0), fail(4, 0), cens(5, 0),
                                    fail(6, 1), fail(7, 1), cens(8, 1), fail(9, 1), cens(10, 1)});
  const std::vector<RiskTable> tables = risk_tables(ds);
  REQUIRE(tables.size() == 6);
  REQUIRE(tables[0].tau == 1.0);
  REQUIRE(tables[0].d0 == 1);
  REQUIRE(tables[0].d1 == 0);
  REQUIRE(tables[0].y0 == 5);
  REQUIRE(tables[0].y1 == 5);
  REQUIRE(tables[0].u0 == 0);
  REQUIRE(tables[0].u1 == 0);
  // gap before tau=3 holds the censoring at 2
  REQUIRE(tables[1].tau == 3.0);
  REQUIRE(tables[1].u0 == 1);
  REQUIRE(tables[1].y0 == 3);
  REQUIRE(tables[1].y1 == 5);
}

TEST_CASE("risk_tables needs at least one failure") {
  const Dataset ds = build_dataset({cens(1, 0), cens(2, 1)});
  REQUIRE_THROWS_AS(risk_tables(ds), Error);
  REQUIRE(code_of([&] { risk_tables(ds); }) == ErrorCode::NoFailures);
}

TEST_CASE("all-failure pooled risk counts shrink by one per table") {
  const Dataset ds = build_dataset(
      {fail(1, 0), fail(2, 0), fail(3, 0), fail(4, 1), fail(5, 1), fail(6, 1)});
  const std::vector<RiskTable> tables = risk_tables(ds);
  REQUIRE(tables.size() == 6);
  for (std::size_t j = 0; j < tables.size(); ++j)
    REQUIRE(tables[j].y0 + tables[j].y1 == 7 - static_cast<int>(j + 1));
}

TEST_CASE("censorings before the first failure reduce the first table") {
  const Dataset ds = build_dataset({cens(0.5, 0), fail(1, 0), fail(2, 1)});
  const std::vector<RiskTable> tables = risk_tables(ds);
  REQUIRE(tables[0].u0 == 1);
  REQUIRE(tables[0].y0 == 1);
  REQUIRE(tables[0].y1 == 1);
}

TEST_CASE("a censoring at a failure time is still at risk there") {
  const Dataset ds = build_dataset({fail(1, 0), cens(1, 1), fail(2, 1)});
  const std::vector<RiskTable> tables = risk_tables(ds);
  REQUIRE(tables.size() == 2);
  REQUIRE(tables[0].y0 == 1);
  REQUIRE(tables[0].y1 == 2);  // the censoring at t=1 counts at tau=1
  REQUIRE(tables[1].u1 == 1);  // and leaves in the following gap
  REQUIRE(tables[1].y0 == 0);
  REQUIRE(tables[1].y1 == 1);
}

TEST_CASE("risk-table recurrence and accounting hold on random data") {
  testsupport::Rng rng(1234);
  for (int trial = 0; trial < 200; ++trial) {
    const Dataset ds = testsupport::random_strict_dataset(rng);
    const std::vector<RiskTable> tables = risk_tables(ds);
    int consumed = 0;
    for (std::size_t j = 0; j < tables.size(); ++j) {
      const RiskTable& t = tables[j];
      REQUIRE(t.d0 + t.d1 == 1);  // strict data
      REQUIRE(t.y0 >= t.d0);
      REQUIRE(t.y1 >= t.d1);
      if (j > 0) {
        const RiskTable& p = tables[j - 1];
        REQUIRE(t.y0 == p.y0 - t.u0 - p.d0);
        REQUIRE(t.y1 == p.y1 - t.u1 - p.d1);
      } else {
        REQUIRE(t.y0 + t.u0 == static_cast<int>(ds.n0));
        REQUIRE(t.y1 + t.u1 == static_cast<int>(ds.n1));
      }
      consumed += t.d0 + t.d1 + t.u0 + t.u1;
    }
    int tail = 0;  // censored at or after the last failure
    for (const Observation& obs : ds.observations)
      if (obs.status == Status::Censored && obs.time >= tables.back().tau) ++tail;
    REQUIRE(consumed + tail == static_cast<int>(ds.n0 + ds.n1));
  }
}
