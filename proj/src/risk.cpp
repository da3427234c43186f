#include "lcap/risk.hpp"

#include <cmath>

#include "lcap/affinity.hpp"
#include "lcap/error.hpp"
#include "lcap/numeric.hpp"

namespace lcap {

LossTable::LossTable(std::size_t hypotheses, std::size_t observations, std::vector<double> values)
    : h_(hypotheses), z_(observations), values_(std::move(values)) {
  if (h_ == 0 || z_ == 0) throw DimensionError("loss table needs at least one row and column");
  if (values_.size() != h_ * z_) throw DimensionError("loss table size does not match its shape");
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0)) throw ArgumentError("loss values must lie in [0, 1]");
  }
}

LossTable LossTable::constant(std::size_t hypotheses, std::size_t observations, double value) {
  return LossTable(hypotheses, observations, std::vector<double>(hypotheses * observations, value));
}

LossTable LossTable::scaled(double c) const {
  if (!(c >= 0.0 && c <= 1.0)) throw ArgumentError("loss scale must lie in [0, 1]");
  std::vector<double> v(values_);
  for (double& x : v) x *= c;
  return LossTable(h_, z_, std::move(v));
}

LossTable majority_vote_loss(int m) {
  if (m < 1) throw ArgumentError("training set size must be >= 1");
  const std::size_t h = static_cast<std::size_t>(m) + 1;
  std::vector<double> v(h * 2);
  for (int k = 0; k <= m; ++k) {
    const int label = 2 * k >= m ? 1 : 0;
    for (int z = 0; z < 2; ++z) v[static_cast<std::size_t>(k) * 2 + z] = z == label ? 0.0 : 1.0;
  }
  return LossTable(h, 2, std::move(v));
}

LossTable misclassification_loss(std::size_t n) {
  std::vector<double> v(n * n, 1.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 0.0;
  return LossTable(n, n, std::move(v));
}

namespace {

constexpr double kTieTolerance = 1e-13;

void require_shape(const LearningMachine& machine, const Pmf& p, int m, const LossTable& loss) {
  if (loss.observations() != p.size() || p.size() != machine.observation_alphabet_size()) {
    throw DimensionError("loss table, distribution and machine disagree on the observation alphabet");
  }
  if (loss.hypotheses() != machine.hypothesis_count(m)) {
    throw DimensionError("loss table rows do not match the hypothesis alphabet");
  }
}

LossTable tight_loss_impl(const LearningMachine& machine, const Pmf& p, int m, double budget, bool reversed) {
  const JointPmf j = joint_ztrn_h(machine, p, m, budget);
  const std::size_t n = j.x_size();
  const std::size_t hs = j.y_size();
  const Pmf pz = j.marginal_x();
  const Pmf ph = j.marginal_y();
  std::vector<double> v(hs * n, 1.0);
  for (std::size_t h = 0; h < hs; ++h) {
    if (ph[h] <= 0.0) continue;
    for (std::size_t z = 0; z < n; ++z) {
      const double cond = j.at(z, h) / ph[h];
      // Equal up to rounding counts as a tie, which takes loss 1.
      const bool below = pz[z] >= cond - kTieTolerance;
      v[h * n + z] = (below != reversed) ? 1.0 : 0.0;
    }
  }
  return LossTable(hs, n, std::move(v));
}

}  // namespace

double true_risk(const LearningMachine& machine, const Pmf& p, int m, const LossTable& loss, double budget) {
  require_shape(machine, p, m, loss);
  const Pmf ph = hypothesis_marginal(machine, p, m, budget);
  CompensatedSum s;
  for (std::size_t h = 0; h < ph.size(); ++h) {
    if (ph[h] == 0.0) continue;
    for (std::size_t z = 0; z < p.size(); ++z) s.add(ph[h] * p[z] * loss.at(h, z));
  }
  return s.value();
}

double empirical_risk(const LearningMachine& machine, const Pmf& p, int m, const LossTable& loss, double budget) {
  require_shape(machine, p, m, loss);
  const JointPmf j = joint_ztrn_h(machine, p, m, budget);
  CompensatedSum s;
  for (std::size_t z = 0; z < j.x_size(); ++z) {
    for (std::size_t h = 0; h < j.y_size(); ++h) s.add(j.at(z, h) * loss.at(h, z));
  }
  return s.value();
}

LossTable tight_loss(const LearningMachine& machine, const Pmf& p, int m, double budget) {
  return tight_loss_impl(machine, p, m, budget, false);
}

LossTable tight_loss_reversed(const LearningMachine& machine, const Pmf& p, int m, double budget) {
  return tight_loss_impl(machine, p, m, budget, true);
}

RiskGapCheck risk_gap_check(const LearningMachine& machine, const Pmf& p, int m, const LossTable& loss,
                            double budget) {
  RiskGapCheck out;
  out.gap = true_risk(machine, p, m, loss, budget) - empirical_risk(machine, p, m, loss, budget);
  out.affinity = mutual_affinity(joint_ztrn_h(machine, p, m, budget));
  out.holds = std::abs(out.gap) <= out.affinity + 1e-12;
  return out;
}

double hoeffding_affinity_bound(double phi, int m) {
  if (!(phi >= 0.0 && phi <= 1.0)) throw ArgumentError("phi must lie in [0, 1]");
  if (m < 1) throw ArgumentError("training set size must be >= 1");
  const double d = 0.5 - phi;
  return 2.0 * std::exp(-2.0 * m * d * d);
}

}  // namespace lcap
