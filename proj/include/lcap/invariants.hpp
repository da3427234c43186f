#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lcap/machines.hpp"

namespace lcap {

/// Every implemented machine that accepts an n-symbol alphabet, plus a
/// random-kernel machine and a post-processed one keyed by seed.
std::vector<LearningMachine> machine_zoo(std::size_t n, std::uint64_t seed);

struct SuiteResult {
  std::string name;
  std::size_t instances = 0;
  std::size_t failures = 0;
  /// Description of the first failing instance, empty when none failed.
  std::string first_failure;
  bool passed() const noexcept { return failures == 0; }
};

/// Names accepted by run_invariant_suite, in run order.
const std::vector<std::string>& invariant_suite_names();

/// Runs one seeded property suite. Most suites draw `instances` random
/// cases; partial_order walks its fixed 201-point grids instead.
SuiteResult run_invariant_suite(const std::string& name, std::uint64_t seed, std::size_t instances = 1000);

std::vector<SuiteResult> run_invariant_suites(std::uint64_t seed, std::size_t instances = 1000);

}  // namespace lcap
