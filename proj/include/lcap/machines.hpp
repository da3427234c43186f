#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "lcap/affinity.hpp"
#include "lcap/error.hpp"
#include "lcap/numeric.hpp"
#include "lcap/pmf.hpp"

namespace lcap {

/// Default cap on the number of training-set types one exact evaluation may visit.
inline constexpr double kDefaultTypeBudget = 1e7;

/// Per-symbol occurrence counts of a training set.
class TypeVector {
 public:
  explicit TypeVector(std::vector<int> counts);

  std::span<const int> counts() const noexcept { return counts_; }
  int m() const noexcept { return m_; }
  std::size_t size() const noexcept { return counts_.size(); }
  int operator[](std::size_t i) const { return counts_[i]; }

  bool operator==(const TypeVector&) const = default;

 private:
  std::vector<int> counts_;
  int m_ = 0;
};

/// log(m! / prod_i counts_i!).
double log_multinomial(std::span<const int> counts);

/// Number of compositions of m into n nonnegative parts, C(m + n - 1, n - 1).
double type_count(std::size_t n, int m);

/// Visits every composition of m into n parts exactly once, first coordinate
/// descending: (m,0,..), (m-1,1,0,..), ... , (0,..,0,m). The span is only
/// valid during the call.
template <class Visitor>
void for_each_type(std::size_t n, int m, Visitor&& visit) {
  if (n == 0) throw ArgumentError("alphabet size must be >= 1");
  if (m < 0) throw ArgumentError("training set size must be >= 0");
  std::vector<int> c(n, 0);
  c[0] = m;
  for (;;) {
    visit(std::span<const int>(c));
    const int tail = c[n - 1];
    c[n - 1] = 0;
    std::size_t i = n - 1;
    while (i > 0 && c[i - 1] == 0) --i;
    if (i == 0) break;
    --c[i - 1];
    c[i] = tail + 1;
  }
}

/// Position of a composition in for_each_type order.
std::size_t type_rank(std::span<const int> counts);

struct WeightedType {
  TypeVector type;
  /// Log multinomial coefficient only; the Σ counts log p term is left to callers.
  double log_coefficient = 0.0;
};

std::vector<WeightedType> enumerate_types(std::size_t n, int m);

/// Throws ResourceError when C(m + n - 1, n - 1) exceeds the budget.
void check_type_budget(std::size_t n, int m, double budget);

/// Visits every type of an m-sample from p with its multinomial probability
/// in linear space. Returns the total visited weight, which differs from 1
/// only by rounding; callers divide by it to renormalize.
template <class Visitor>
double for_each_weighted_type(const Pmf& p, int m, Visitor&& visit) {
  const std::size_t n = p.size();
  std::vector<double> log_p(n);
  for (std::size_t i = 0; i < n; ++i) log_p[i] = p[i] > 0.0 ? std::log(p[i]) : 0.0;
  std::vector<double> log_fact(static_cast<std::size_t>(m) + 1);
  for (int k = 0; k <= m; ++k) log_fact[static_cast<std::size_t>(k)] = log_factorial(k);
  CompensatedSum total;
  for_each_type(n, m, [&](std::span<const int> c) {
    double lw = log_fact[static_cast<std::size_t>(m)];
    for (std::size_t i = 0; i < n; ++i) {
      if (c[i] == 0) continue;
      if (p[i] == 0.0) return;
      lw += c[i] * log_p[i] - log_fact[static_cast<std::size_t>(c[i])];
    }
    const double w = std::exp(lw);
    total.add(w);
    visit(c, w);
  });
  return total.value();
}

struct HypothesisWeight {
  std::size_t index = 0;
  double probability = 0.0;
};

/// A permutation-invariant learning machine: for every training-set size m a
/// finite hypothesis alphabet and a kernel from training-set types to
/// distributions over it. The kernel sees the training set only through its
/// type, so invariance holds by construction.
class LearningMachine {
 public:
  using HypothesisCount = std::function<std::size_t(int m)>;
  /// Writes the sparse hypothesis distribution for one type into `out`
  /// (cleared by the caller). m is the sum of counts.
  using Kernel = std::function<void(std::span<const int> counts, int m, std::vector<HypothesisWeight>& out)>;

  LearningMachine(std::string name, std::size_t observation_alphabet_size, HypothesisCount hypothesis_count,
                  Kernel kernel);

  const std::string& name() const noexcept { return name_; }
  std::size_t observation_alphabet_size() const noexcept { return n_; }
  std::size_t hypothesis_count(int m) const { return hypothesis_count_(m); }

  void kernel(std::span<const int> counts, std::vector<HypothesisWeight>& out) const;
  /// Dense hypothesis distribution for one type.
  Pmf kernel_pmf(const TypeVector& type) const;

 private:
  std::string name_;
  std::size_t n_;
  HypothesisCount hypothesis_count_;
  Kernel kernel_;
};

/// Binary observations; the hypothesis is the number of ones k in {0..m}.
LearningMachine make_empirical_average_machine();
/// Binary observations; the hypothesis is 1 when 2k >= m (ties go to 1), else 0.
LearningMachine make_majority_machine();
/// Hypothesis is one observation symbol drawn with P(H = z) = counts(z) / m.
LearningMachine make_randomized_label_machine(std::size_t n);
/// Hypothesis is the type itself, indexed by type_rank.
LearningMachine make_lazy_learner(std::size_t n);
/// A single hypothesis regardless of the data.
LearningMachine make_constant_machine(std::size_t n);
/// Draws the hypothesis from a fixed distribution, ignoring the training set.
LearningMachine make_type_ignoring_machine(std::size_t n, Pmf hypothesis_distribution);
/// Kernel rows are pseudo-random distributions over `hypotheses` symbols,
/// fixed by (seed, type). Used to exercise the inequalities on arbitrary machines.
LearningMachine make_random_kernel_machine(std::size_t n, std::size_t hypotheses, std::uint64_t seed);

/// Markov post-processing S_m -> H1 -> H2. `channel(h1, m, out)` writes the
/// sparse distribution of H2 given H1 = h1.
using Channel = std::function<void(std::size_t h1, int m, std::vector<HypothesisWeight>& out)>;
LearningMachine post_process(LearningMachine inner, std::string name, LearningMachine::HypothesisCount count,
                             Channel channel);

/// Random channel over `outputs` symbols, fixed by (seed, h1, m).
Channel random_channel(std::size_t outputs, std::uint64_t seed);

/// Exact joint of (Z_trn, H), where Z_trn is a uniform draw from the training
/// set: P(z, h) = sum_types P(type) (counts(z) / m) P(h | type).
JointPmf joint_ztrn_h(const LearningMachine& machine, const Pmf& p, int m,
                      double budget = kDefaultTypeBudget);

/// P(H) = sum_types P(type) P(h | type).
Pmf hypothesis_marginal(const LearningMachine& machine, const Pmf& p, int m,
                        double budget = kDefaultTypeBudget);

}  // namespace lcap
