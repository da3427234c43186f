#include "lcap/stability.hpp"

#include <vector>

#include "lcap/affinity.hpp"
#include "lcap/error.hpp"
#include "lcap/numeric.hpp"

namespace lcap {

Pmf hypothesis_given_slot(const LearningMachine& machine, const Pmf& p, int m, std::size_t z, double budget) {
  const std::size_t n = machine.observation_alphabet_size();
  if (p.size() != n) throw DimensionError("distribution and machine alphabets differ");
  if (z >= n) throw ArgumentError("observation index out of range");
  if (m < 1) throw ArgumentError("training set size must be >= 1");
  check_type_budget(n, m - 1, budget);
  const std::size_t hs = machine.hypothesis_count(m);
  std::vector<CompensatedSum> acc(hs);
  std::vector<int> full(n);
  std::vector<HypothesisWeight> row;
  const double total = for_each_weighted_type(p, m - 1, [&](std::span<const int> c, double w) {
    std::copy(c.begin(), c.end(), full.begin());
    ++full[z];
    machine.kernel(full, row);
    for (const auto& hw : row) {
      if (hw.index >= hs) throw DimensionError("kernel produced a hypothesis index out of range");
      acc[hw.index].add(w * hw.probability);
    }
  });
  std::vector<double> mass(hs);
  for (std::size_t h = 0; h < hs; ++h) mass[h] = acc[h].value() / total;
  return Pmf::normalized(std::move(mass));
}

double stability_s(const LearningMachine& machine, const Pmf& p, int m, double budget) {
  const Pmf marginal = hypothesis_marginal(machine, p, m, budget);
  CompensatedSum s;
  for (std::size_t z = 0; z < p.size(); ++z) {
    if (p[z] == 0.0) continue;
    s.add(p[z] * similarity(marginal, hypothesis_given_slot(machine, p, m, z, budget)));
  }
  return s.value();
}

double collision_lower_bound(const LearningMachine& machine, const Pmf& p, int m, double budget) {
  const Pmf marginal = hypothesis_marginal(machine, p, m, budget);
  CompensatedSum s;
  for (double q : marginal.masses()) s.add(q * q);
  return s.value();
}

StabilityReport stability_report(const LearningMachine& machine, const Pmf& p, int m, double budget) {
  return {stability_s(machine, p, m, budget), mutual_affinity(joint_ztrn_h(machine, p, m, budget)),
          collision_lower_bound(machine, p, m, budget)};
}

double distribution_free_stability(const LearningMachine& machine, int m, const CapacitySearchOptions& options) {
  return 1.0 - capacity_search(machine, m, options).capacity_estimate;
}

}  // namespace lcap
