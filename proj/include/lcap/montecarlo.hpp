#pragma once

#include <cstdint>
#include <vector>

namespace lcap {

struct McConfig {
  std::vector<int> m_values{10, 25, 50, 100, 200};
  int trials = 1000;
  std::uint64_t master_seed = 42;
  /// 0 means hardware concurrency. Output does not depend on it.
  unsigned threads = 1;
};

struct McRow {
  int m = 0;
  double empirical_risk_mean = 0.0;
  /// Sample standard deviation (n - 1 denominator) over sqrt(trials).
  double standard_error = 0.0;
  /// bernoulli_affinity_closed(0.5, m).
  double capacity = 0.0;
  /// Randomized classifier only: mean + capacity.
  double bound_det = 0.0;
  /// Randomized classifier only: mean + randomized_capacity_closed(m, 2).
  double bound_rand = 0.0;
};

struct McResult {
  std::vector<McRow> rows;
};

/// Throws ArgumentError for an empty m list, m < 1 or trials < 1.
void validate(const McConfig& cfg);

/// Per trial: m fair bits, training error of the majority label (ties go to 1).
McResult simulate_majority(const McConfig& cfg);

/// Per trial: m fair bits with s ones; predict 1 everywhere with probability
/// s/m, else 0 everywhere; record that constant's training error.
McResult simulate_randomized_classifier(const McConfig& cfg);

}  // namespace lcap
