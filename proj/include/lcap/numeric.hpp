#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace lcap {

/// Neumaier's variant of Kahan summation. Order-insensitive to well below
/// 1e-12 for the sums that appear here (at most a few million terms in [0,1]).
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_total(std::span<const double> xs) noexcept {
  CompensatedSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

inline double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

inline double log_binomial(int n, int k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

/// x * log(y) with the 0 * log(0) = 0 convention.
inline double xlogy(double x, double y) {
  if (x == 0.0) return 0.0;
  return x * std::log(y);
}

/// Binomial(m, phi) probabilities for k = 0..m, evaluated term by term in log space.
inline std::vector<double> binomial_pmf(int m, double phi) {
  std::vector<double> out(static_cast<std::size_t>(m) + 1, 0.0);
  if (phi <= 0.0) {
    out.front() = 1.0;
    return out;
  }
  if (phi >= 1.0) {
    out.back() = 1.0;
    return out;
  }
  const double lp = std::log(phi);
  const double lq = std::log1p(-phi);
  for (int k = 0; k <= m; ++k) {
    out[static_cast<std::size_t>(k)] = std::exp(log_binomial(m, k) + k * lp + (m - k) * lq);
  }
  return out;
}

/// Exact C(n, k) as a double; callers use it for counts well below 2^53.
inline double binomial_count(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

}  // namespace lcap
