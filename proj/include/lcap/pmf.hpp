#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lcap {

/// Absolute tolerance on the total mass of a probability vector.
inline constexpr double kMassTolerance = 1e-12;

/// Probability mass function over the indexed alphabet {0, ..., size()-1}.
/// Immutable once constructed.
class Pmf {
 public:
  /// Throws ArgumentError unless every entry is >= 0 and the total is 1
  /// within kMassTolerance.
  explicit Pmf(std::vector<double> mass);

  /// Rescales nonnegative weights to unit mass.
  static Pmf normalized(std::vector<double> weights);
  static Pmf uniform(std::size_t n);
  static Pmf delta(std::size_t n, std::size_t at);
  /// Two-symbol distribution with P(1) = phi.
  static Pmf bernoulli(double phi);

  std::size_t size() const noexcept { return mass_.size(); }
  double operator[](std::size_t i) const { return mass_[i]; }
  std::span<const double> masses() const noexcept { return mass_; }
  std::size_t support_size() const noexcept;

  bool operator==(const Pmf&) const = default;

 private:
  std::vector<double> mass_;
};

/// Overlap sum_a min(p(a), q(a)).
double similarity(const Pmf& p, const Pmf& q);

/// 1 - similarity(p, q).
double tv_distance(const Pmf& p, const Pmf& q);

/// Half the L1 distance. Same quantity as tv_distance through a separate
/// code path; the two are cross-checked in tests.
double tv_distance_half_l1(const Pmf& p, const Pmf& q);

struct Lemma1State {
  Pmf rho;
  Pmf nu;
  double partial_product = 1.0;
  std::size_t steps_taken = 0;
  /// Set when the iteration stopped before max_steps.
  bool converged = false;
};

struct Lemma1Result {
  double approximation = 1.0;
  Lemma1State state;
};

/// Truncated infinite-product expansion of the total variation distance.
///
/// Each step multiplies the running product by 1 - sum_a rho(a) nu(a) and
/// moves to rho' ~ rho (1 - nu), nu' ~ nu (1 - rho). Every partial product is
/// an upper bound on tv_distance(p, q). Stops after max_steps factors, when a
/// factor drops to tol or below (the distance is then 0 within tol), or when
/// the product changes by less than tol. tol = 0 runs exactly max_steps
/// factors unless one of them is 0.
Lemma1Result lemma1_product(const Pmf& p, const Pmf& q, std::size_t max_steps = 10000,
                            double tol = 1e-9);

/// 1 + (sum_z sqrt(p(z) (1 - p(z))))^2.
double effective_support(const Pmf& p);

/// Geometric distribution alpha (1 - alpha)^(z - 1) on z = 1, 2, ... stored
/// at index z - 1, truncated at the first length n with (1 - alpha)^n <=
/// tail_mass_tol and renormalized.
Pmf geometric_pmf(double alpha, double tail_mass_tol = 1e-12);

/// Entropy in nats.
double shannon_entropy(const Pmf& p);

/// D(p || q) in nats. Returns +infinity when p is not absolutely continuous
/// with respect to q.
double kl_divergence(const Pmf& p, const Pmf& q);

}  // namespace lcap
