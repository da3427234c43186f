#include "lcap/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lcap/error.hpp"
#include "lcap/numeric.hpp"

namespace lcap {

namespace {

void require_same_alphabet(const Pmf& p, const Pmf& q) {
  if (p.size() != q.size()) {
    throw DimensionError("alphabet mismatch: " + std::to_string(p.size()) + " vs " +
                         std::to_string(q.size()));
  }
}

}  // namespace

Pmf::Pmf(std::vector<double> mass) : mass_(std::move(mass)) {
  if (mass_.empty()) throw ArgumentError("pmf needs at least one symbol");
  for (double x : mass_) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw ArgumentError("pmf entries must be finite and >= 0");
  }
  const double total = compensated_total(mass_);
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw ArgumentError("pmf mass sums to " + std::to_string(total));
  }
}

Pmf Pmf::normalized(std::vector<double> weights) {
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw ArgumentError("weights must be finite and >= 0");
  }
  const double total = compensated_total(weights);
  if (!(total > 0.0)) throw ArgumentError("weights sum to zero");
  for (double& w : weights) w /= total;
  return Pmf(std::move(weights));
}

Pmf Pmf::uniform(std::size_t n) {
  if (n == 0) throw ArgumentError("uniform pmf needs n >= 1");
  return Pmf(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Pmf Pmf::delta(std::size_t n, std::size_t at) {
  if (at >= n) throw ArgumentError("delta position outside alphabet");
  std::vector<double> m(n, 0.0);
  m[at] = 1.0;
  return Pmf(std::move(m));
}

Pmf Pmf::bernoulli(double phi) {
  if (!(phi >= 0.0 && phi <= 1.0)) throw ArgumentError("bernoulli parameter outside [0,1]");
  return Pmf({1.0 - phi, phi});
}

std::size_t Pmf::support_size() const noexcept {
  return static_cast<std::size_t>(std::count_if(mass_.begin(), mass_.end(), [](double x) { return x > 0.0; }));
}

double similarity(const Pmf& p, const Pmf& q) {
  require_same_alphabet(p, q);
  CompensatedSum s;
  for (std::size_t a = 0; a < p.size(); ++a) s.add(std::min(p[a], q[a]));
  return std::clamp(s.value(), 0.0, 1.0);
}

double tv_distance(const Pmf& p, const Pmf& q) { return 1.0 - similarity(p, q); }

double tv_distance_half_l1(const Pmf& p, const Pmf& q) {
  require_same_alphabet(p, q);
  CompensatedSum s;
  for (std::size_t a = 0; a < p.size(); ++a) s.add(std::abs(p[a] - q[a]));
  return 0.5 * s.value();
}

Lemma1Result lemma1_product(const Pmf& p, const Pmf& q, std::size_t max_steps, double tol) {
  require_same_alphabet(p, q);
  if (max_steps == 0) throw ArgumentError("lemma1_product needs max_steps >= 1");
  if (!(tol >= 0.0)) throw ArgumentError("lemma1_product needs tol >= 0");

  const std::size_t n = p.size();
  std::vector<double> rho(p.masses().begin(), p.masses().end());
  std::vector<double> nu(q.masses().begin(), q.masses().end());
  std::vector<double> next_rho(n), next_nu(n);

  double product = 1.0;
  std::size_t steps = 0;
  bool converged = false;
  while (steps < max_steps) {
    CompensatedSum overlap;
    for (std::size_t a = 0; a < n; ++a) overlap.add(rho[a] * nu[a]);
    const double factor = std::clamp(1.0 - overlap.value(), 0.0, 1.0);
    const double next_product = product * factor;
    ++steps;
    if (factor <= tol) {
      // Identical point masses land here with factor 0; the recursion's
      // denominator would vanish, and the distance is 0 within tol.
      product = next_product;
      converged = true;
      break;
    }
    const double change = product - next_product;
    product = next_product;
    if (change < tol && steps > 1) {
      converged = true;
      break;
    }
    for (std::size_t a = 0; a < n; ++a) {
      next_rho[a] = rho[a] * (1.0 - nu[a]);
      next_nu[a] = nu[a] * (1.0 - rho[a]);
    }
    // Both vectors sum to the factor in exact arithmetic; dividing by the
    // realized totals keeps rounding from accumulating over many steps.
    const double rho_total = compensated_total(next_rho);
    const double nu_total = compensated_total(next_nu);
    for (std::size_t a = 0; a < n; ++a) {
      rho[a] = next_rho[a] / rho_total;
      nu[a] = next_nu[a] / nu_total;
    }
  }
  Lemma1State state{Pmf(rho), Pmf(nu), product, steps, converged};
  return {product, std::move(state)};
}

double effective_support(const Pmf& p) {
  CompensatedSum s;
  for (double x : p.masses()) s.add(std::sqrt(x * (1.0 - x)));
  const double root = s.value();
  return 1.0 + root * root;
}

Pmf geometric_pmf(double alpha, double tail_mass_tol) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ArgumentError("geometric alpha must lie in (0, 1]");
  if (!(tail_mass_tol > 0.0 && tail_mass_tol < 1.0)) {
    throw ArgumentError("tail mass tolerance must lie in (0, 1)");
  }
  if (alpha == 1.0) return Pmf::delta(1, 0);
  const double fail = 1.0 - alpha;
  std::vector<double> mass;
  double tail = 1.0;  // (1 - alpha)^n after n terms
  while (tail > tail_mass_tol) {
    mass.push_back(alpha * tail);
    tail *= fail;
  }
  return Pmf::normalized(std::move(mass));
}

double shannon_entropy(const Pmf& p) {
  CompensatedSum s;
  for (double x : p.masses()) s.add(-xlogy(x, x));
  return std::max(0.0, s.value());
}

double kl_divergence(const Pmf& p, const Pmf& q) {
  require_same_alphabet(p, q);
  CompensatedSum s;
  for (std::size_t a = 0; a < p.size(); ++a) {
    if (p[a] == 0.0) continue;
    if (q[a] == 0.0) return std::numeric_limits<double>::infinity();
    s.add(p[a] * std::log(p[a] / q[a]));
  }
  return std::max(0.0, s.value());
}

}  // namespace lcap
