#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lcap/machines.hpp"
#include "lcap/pmf.hpp"

namespace lcap {

/// I_P(Z_trn, H): mutual affinity of the exact (Z_trn, H) joint.
double machine_affinity(const LearningMachine& machine, const Pmf& p, int m,
                        double budget = kDefaultTypeBudget);

/// Mean absolute deviation of k/m for k ~ Binomial(m, phi):
/// sum_k C(m,k) phi^k (1-phi)^(m-k) |phi - k/m|, summed directly with
/// log-space binomial weights. This is the empirical-average machine's
/// affinity at Bernoulli(phi).
double bernoulli_affinity_closed(double phi, int m);

/// Closed mean-deviation form, valid only when m * phi is an integer;
/// nullopt otherwise.
std::optional<double> bernoulli_affinity_md(double phi, int m);

/// De Moivre: E|X - m phi| = 2 ceil(m phi) (1 - phi) P(X = ceil(m phi)),
/// divided by m. Independent oracle for bernoulli_affinity_closed.
double de_moivre_affinity(double phi, int m);

/// 1 / sqrt(2 pi m).
double deterministic_capacity_asymptotic(int m);

/// (1/m) (1 - 1/n): capacity of the randomized-label machine.
double randomized_capacity_closed(int m, std::size_t n);

/// Affinity of the majority machine at Bernoulli(phi) for odd m:
/// |sum_{k <= (m-1)/2} b_k (phi - k/m)| + |sum_{k >= (m+1)/2} b_k (phi - k/m)|.
/// Throws ArgumentError for even m; use machine_affinity there.
double majority_affinity_closed(double phi, int m);

/// Lazy-learner affinity, (1/2) sum_k E|N_k/m - p_k| with N_k ~ Binomial(m, p_k).
double lazy_affinity(const Pmf& p, int m);

/// sqrt((Ess[p] - 1) / (2 pi m)).
double sqrt_law_bound(const Pmf& p, int m);

struct ClassificationBound {
  /// sqrt((|X| |Y| - 1) / (2 pi m)).
  double value = 0.0;
  /// The same bound written through |H| = |Y|^|X|:
  /// sqrt((|Y| log_|Y| |H| - 1) / (2 pi m)).
  double via_hypothesis_count = 0.0;
};

ClassificationBound classification_bound(std::size_t x_size, std::size_t y_size, int m);

struct GridPoint {
  std::vector<double> distribution;
  double affinity = 0.0;
};

struct CapacityReport {
  std::string machine_id;
  int m = 0;
  /// Every evaluated distribution, coarse grid first, then the refinement.
  std::vector<GridPoint> affinity_at;
  double capacity_estimate = 0.0;
  Pmf argmax_distribution = Pmf::uniform(1);
  /// Spacing of the coarse grid.
  double grid_resolution = 0.0;
};

/// 1/200 for binary alphabets, 1/40 per coordinate otherwise.
double default_grid_resolution(std::size_t n);

struct CapacitySearchOptions {
  /// <= 0 selects default_grid_resolution.
  double grid_resolution = 0.0;
  double budget = kDefaultTypeBudget;
  /// Cap on evaluated distributions (coarse grid plus refinement).
  double max_points = 1e6;
  /// Cap on coarse grid points times training-set types.
  double max_work = 2e9;
  /// 0 means hardware concurrency. Does not affect the result.
  unsigned threads = 1;
};

/// Approximates sup_p I_P(Z_trn, H) over a regular simplex grid with the
/// given spacing, then once more at spacing/10 within one coarse step of the
/// best point. Ties go to the lexicographically smaller distribution.
CapacityReport capacity_search(const LearningMachine& machine, int m, const CapacitySearchOptions& options = {});

struct EntropyBounds {
  double affinity = 0.0;
  /// I(S_m; H), computed as I(type; H).
  double mi_type_h = 0.0;
  /// Shannon entropy of H in nats.
  double h_of_h = 0.0;
  double log_hypothesis_count = 0.0;
  double bound_mutual_information = 0.0;  ///< sqrt(I(S_m; H) / (2m))
  double bound_entropy = 0.0;             ///< sqrt(H(H) / (2m))
  double bound_cardinality = 0.0;         ///< sqrt(log|H| / (2m))
  double bound_type_count = 0.0;          ///< sqrt(|Z| log(1 + m) / (2m))
  /// affinity <= every bound (with 1e-12 slack) and the bounds are ordered.
  bool holds = false;
};

EntropyBounds entropy_capacity_bounds(const LearningMachine& machine, const Pmf& p, int m,
                                      double budget = kDefaultTypeBudget);

}  // namespace lcap
