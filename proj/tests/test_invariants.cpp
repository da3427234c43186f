#include <doctest.h>

#include "lcap/error.hpp"
#include "lcap/invariants.hpp"

using namespace lcap;

TEST_CASE("every suite passes with the default seed") {
  for (const SuiteResult& r : run_invariant_suites(42, 1000)) {
    CHECK_MESSAGE(r.passed(), r.name << ": " << r.first_failure);
    CHECK(r.instances > 0);
  }
}

TEST_CASE("suites pass under other seeds") {
  for (std::uint64_t seed : {1u, 7u, 123456789u}) {
    for (const SuiteResult& r : run_invariant_suites(seed, 300)) CHECK_MESSAGE(r.passed(), r.name << ": " << r.first_failure);
  }
}

TEST_CASE("suite runs are reproducible") {
  const SuiteResult a = run_invariant_suite("risk_gap", 5, 50);
  const SuiteResult b = run_invariant_suite("risk_gap", 5, 50);
  CHECK(a.failures == b.failures);
  CHECK(a.instances == 50);
  CHECK(run_invariant_suite("partial_order", 5, 10).instances == 402);
  CHECK_THROWS_AS(run_invariant_suite("nope", 1, 1), ArgumentError);
}
