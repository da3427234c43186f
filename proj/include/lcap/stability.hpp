#pragma once

#include "lcap/capacity.hpp"
#include "lcap/machines.hpp"
#include "lcap/pmf.hpp"

namespace lcap {

/// P(H | Z_1 = z): one training slot fixed to z, the other m - 1 draws
/// enumerated by type. Defined for every z, including p(z) = 0.
Pmf hypothesis_given_slot(const LearningMachine& machine, const Pmf& p, int m, std::size_t z,
                          double budget = kDefaultTypeBudget);

/// s = sum_z p(z) similarity(P(H), P(H | Z_1 = z)).
double stability_s(const LearningMachine& machine, const Pmf& p, int m, double budget = kDefaultTypeBudget);

/// P(H = H') for hypotheses trained on two independent sets: sum_h P(h)^2.
double collision_lower_bound(const LearningMachine& machine, const Pmf& p, int m,
                             double budget = kDefaultTypeBudget);

struct StabilityReport {
  double s_value = 0.0;
  double affinity = 0.0;
  double collision_lower_bound = 0.0;
};

StabilityReport stability_report(const LearningMachine& machine, const Pmf& p, int m,
                                 double budget = kDefaultTypeBudget);

/// Infimum of s over distributions, read off the capacity grid as
/// 1 - capacity_estimate.
double distribution_free_stability(const LearningMachine& machine, int m, const CapacitySearchOptions& options = {});

}  // namespace lcap
