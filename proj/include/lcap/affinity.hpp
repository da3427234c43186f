#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lcap/pmf.hpp"

namespace lcap {

/// Joint mass function over X x Y, stored row-major with x as the row.
class JointPmf {
 public:
  /// Throws ArgumentError on negative entries or total mass off by more than
  /// kMassTolerance, DimensionError when mass.size() != x_size * y_size.
  JointPmf(std::size_t x_size, std::size_t y_size, std::vector<double> mass);

  static JointPmf normalized(std::size_t x_size, std::size_t y_size, std::vector<double> weights);
  /// Product of two marginals.
  static JointPmf independent(const Pmf& px, const Pmf& py);
  /// P(x, y) = P(x) P(y | x) with one conditional row per x.
  static JointPmf from_channel(const Pmf& px, std::span<const Pmf> y_given_x);

  std::size_t x_size() const noexcept { return x_size_; }
  std::size_t y_size() const noexcept { return y_size_; }
  double at(std::size_t x, std::size_t y) const { return mass_[x * y_size_ + y]; }
  std::span<const double> masses() const noexcept { return mass_; }

  Pmf marginal_x() const;
  Pmf marginal_y() const;
  /// P(X | Y = y); throws ArgumentError when P(Y = y) = 0.
  Pmf x_given_y(std::size_t y) const;
  /// P(Y | X = x); throws ArgumentError when P(X = x) = 0.
  Pmf y_given_x(std::size_t x) const;
  /// The same joint viewed as P(Y, X).
  JointPmf transposed() const;

 private:
  std::size_t x_size_;
  std::size_t y_size_;
  std::vector<double> mass_;
};

/// Total variation distance between P(X) P(Y) and P(X, Y).
double mutual_affinity(const JointPmf& j);

/// E_Y tv(P(X), P(X | Y)), summing over y with positive mass.
double mutual_affinity_over_y(const JointPmf& j);

/// E_X tv(P(Y), P(Y | X)), summing over x with positive mass.
double mutual_affinity_over_x(const JointPmf& j);

/// tv(P(X), P(X | Y = y)): how far the event Y = y moves the belief about X.
double information_of_event(const JointPmf& j, std::size_t y);

/// Mutual information in nats.
double mutual_information(const JointPmf& j);

struct BayesError {
  double e_star = 0.0;
  /// kappa (1 - tv(p0, p1)) with kappa the larger class prior.
  double bound = 0.0;
};

/// Optimal two-class error with class priors (prior0, 1 - prior0) and class
/// conditionals p0, p1.
BayesError bayes_error(double prior0, const Pmf& p0, const Pmf& p1);

}  // namespace lcap
