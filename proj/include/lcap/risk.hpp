#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lcap/machines.hpp"
#include "lcap/pmf.hpp"

namespace lcap {

/// Bounded loss L(h, z) in [0, 1]. A random loss is stored as its
/// conditional mean given (h, z); both risks only see that mean.
class LossTable {
 public:
  /// values is row-major with h as the row. Throws ArgumentError on entries
  /// outside [0, 1] and DimensionError on a size mismatch.
  LossTable(std::size_t hypotheses, std::size_t observations, std::vector<double> values);

  static LossTable constant(std::size_t hypotheses, std::size_t observations, double value);

  std::size_t hypotheses() const noexcept { return h_; }
  std::size_t observations() const noexcept { return z_; }
  double at(std::size_t h, std::size_t z) const { return values_[h * z_ + z]; }
  std::span<const double> values() const noexcept { return values_; }

  /// Every entry multiplied by c in [0, 1].
  LossTable scaled(double c) const;

 private:
  std::size_t h_;
  std::size_t z_;
  std::vector<double> values_;
};

/// Loss for the empirical-average machine: predict label 1{2k >= m} from the
/// count k and pay 1 when it differs from z.
LossTable majority_vote_loss(int m);

/// 1{h != z} for a machine whose hypotheses are labels over n symbols.
LossTable misclassification_loss(std::size_t n);

/// E_H E_{Z ~ p} L(H, Z), with Z independent of the training set.
double true_risk(const LearningMachine& machine, const Pmf& p, int m, const LossTable& loss,
                 double budget = kDefaultTypeBudget);

/// E_{(Z_trn, H)} L(H, Z_trn), from the exact joint.
double empirical_risk(const LearningMachine& machine, const Pmf& p, int m, const LossTable& loss,
                      double budget = kDefaultTypeBudget);

/// L*(h, z) = 1{P(Z_trn = z) >= P(Z_trn = z | H = h)}, where values within
/// 1e-13 count as equal. Rows for hypotheses that never occur are set to 1.
LossTable tight_loss(const LearningMachine& machine, const Pmf& p, int m, double budget = kDefaultTypeBudget);

/// 1{P(Z_trn = z) < P(Z_trn = z | H = h)}: the gap is minus the affinity.
LossTable tight_loss_reversed(const LearningMachine& machine, const Pmf& p, int m,
                              double budget = kDefaultTypeBudget);

struct RiskGapCheck {
  /// true_risk - empirical_risk.
  double gap = 0.0;
  double affinity = 0.0;
  /// |gap| <= affinity + 1e-12.
  bool holds = false;
};

RiskGapCheck risk_gap_check(const LearningMachine& machine, const Pmf& p, int m, const LossTable& loss,
                            double budget = kDefaultTypeBudget);

/// 2 exp(-2 m (1/2 - phi)^2).
double hoeffding_affinity_bound(double phi, int m);

}  // namespace lcap
