#include "lcap/montecarlo.hpp"

#include <bit>
#include <cmath>

#include "lcap/capacity.hpp"
#include "lcap/error.hpp"
#include "lcap/numeric.hpp"
#include "lcap/parallel.hpp"
#include "lcap/rng.hpp"

namespace lcap {

void validate(const McConfig& cfg) {
  if (cfg.m_values.empty()) throw ArgumentError("at least one m is required");
  for (int m : cfg.m_values) {
    if (m < 1) throw ArgumentError("m must be >= 1");
  }
  if (cfg.trials < 1) throw ArgumentError("trials must be >= 1");
}

namespace {

int count_ones(SplitMix64& rng, int m) {
  int s = 0;
  int left = m;
  while (left >= 64) {
    s += std::popcount(rng());
    left -= 64;
  }
  if (left > 0) s += std::popcount(rng() >> (64 - left));
  return s;
}

template <class Trial>
McResult run(const McConfig& cfg, bool randomized, Trial&& trial) {
  validate(cfg);
  McResult out;
  for (int m : cfg.m_values) {
    const auto trials = static_cast<std::size_t>(cfg.trials);
    std::vector<double> errors(trials);
    parallel_for(trials, cfg.threads, [&](std::size_t t) {
      SplitMix64 rng(derive_seed(cfg.master_seed, static_cast<std::uint64_t>(m), t));
      errors[t] = trial(rng, m);
    });
    CompensatedSum sum;
    for (double e : errors) sum.add(e);
    const double mean = sum.value() / cfg.trials;
    CompensatedSum sq;
    for (double e : errors) sq.add((e - mean) * (e - mean));
    const double var = cfg.trials > 1 ? sq.value() / (cfg.trials - 1) : 0.0;
    McRow row;
    row.m = m;
    row.empirical_risk_mean = mean;
    row.standard_error = std::sqrt(var / cfg.trials);
    row.capacity = bernoulli_affinity_closed(0.5, m);
    if (randomized) {
      row.bound_det = mean + row.capacity;
      row.bound_rand = mean + randomized_capacity_closed(m, 2);
    }
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace

McResult simulate_majority(const McConfig& cfg) {
  return run(cfg, false, [](SplitMix64& rng, int m) {
    const int s = count_ones(rng, m);
    const bool label_one = 2 * s >= m;
    return static_cast<double>(label_one ? m - s : s) / m;
  });
}

McResult simulate_randomized_classifier(const McConfig& cfg) {
  return run(cfg, true, [](SplitMix64& rng, int m) {
    const int s = count_ones(rng, m);
    const bool predict_one = rng.uniform() * m < s;
    return static_cast<double>(predict_one ? m - s : s) / m;
  });
}

}  // namespace lcap
