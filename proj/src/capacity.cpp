#include "lcap/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lcap/affinity.hpp"
#include "lcap/error.hpp"
#include "lcap/numeric.hpp"
#include "lcap/parallel.hpp"

namespace lcap {

namespace {

void require_phi(double phi) {
  if (!(phi >= 0.0 && phi <= 1.0)) throw ArgumentError("phi must lie in [0, 1]");
}

void require_m(int m) {
  if (m < 1) throw ArgumentError("training set size must be >= 1");
}

}  // namespace

double machine_affinity(const LearningMachine& machine, const Pmf& p, int m, double budget) {
  return mutual_affinity(joint_ztrn_h(machine, p, m, budget));
}

double bernoulli_affinity_closed(double phi, int m) {
  require_phi(phi);
  require_m(m);
  if (phi == 0.0 || phi == 1.0) return 0.0;
  const std::vector<double> b = binomial_pmf(m, phi);
  CompensatedSum s;
  for (int k = 0; k <= m; ++k) s.add(b[static_cast<std::size_t>(k)] * std::abs(phi - static_cast<double>(k) / m));
  return s.value();
}

std::optional<double> bernoulli_affinity_md(double phi, int m) {
  require_phi(phi);
  require_m(m);
  const double mphi = m * phi;
  const double j = std::round(mphi);
  if (std::abs(mphi - j) > 1e-9) return std::nullopt;
  if (phi == 0.0 || phi == 1.0) return 0.0;
  const int k = static_cast<int>(j);
  if (k + 1 > m) return 0.0;
  const double log_md = std::log(2.0 / m) + (m - k) * std::log1p(-phi) + (1 + k) * std::log(phi) +
                        std::log(1.0 + k) + log_binomial(m, k + 1);
  return std::exp(log_md);
}

double de_moivre_affinity(double phi, int m) {
  require_phi(phi);
  require_m(m);
  if (phi == 0.0 || phi == 1.0) return 0.0;
  const int k = static_cast<int>(std::ceil(m * phi));
  if (k <= 0 || k > m) return 0.0;
  const double log_pk = log_binomial(m, k) + k * std::log(phi) + (m - k) * std::log1p(-phi);
  return 2.0 * k * (1.0 - phi) * std::exp(log_pk) / m;
}

double deterministic_capacity_asymptotic(int m) {
  require_m(m);
  return 1.0 / std::sqrt(2.0 * std::numbers::pi * m);
}

double randomized_capacity_closed(int m, std::size_t n) {
  require_m(m);
  if (n == 0) throw ArgumentError("alphabet size must be >= 1");
  return (1.0 - 1.0 / static_cast<double>(n)) / m;
}

double majority_affinity_closed(double phi, int m) {
  require_phi(phi);
  require_m(m);
  if (m % 2 == 0) {
    throw ArgumentError("majority_affinity_closed needs odd m; use machine_affinity for even m");
  }
  const std::vector<double> b = binomial_pmf(m, phi);
  CompensatedSum below, above;
  for (int k = 0; k <= m; ++k) {
    const double term = b[static_cast<std::size_t>(k)] * (phi - static_cast<double>(k) / m);
    (2 * k < m ? below : above).add(term);
  }
  return std::abs(below.value()) + std::abs(above.value());
}

double lazy_affinity(const Pmf& p, int m) {
  require_m(m);
  CompensatedSum s;
  for (double pk : p.masses()) s.add(bernoulli_affinity_closed(pk, m));
  return 0.5 * s.value();
}

double sqrt_law_bound(const Pmf& p, int m) {
  require_m(m);
  const double spread = std::max(0.0, effective_support(p) - 1.0);
  return std::sqrt(spread / (2.0 * std::numbers::pi * m));
}

ClassificationBound classification_bound(std::size_t x_size, std::size_t y_size, int m) {
  require_m(m);
  if (x_size == 0) throw ArgumentError("attribute alphabet must be nonempty");
  if (y_size < 2) throw ArgumentError("classification needs at least two labels");
  const double denom = 2.0 * std::numbers::pi * m;
  const double x = static_cast<double>(x_size);
  const double y = static_cast<double>(y_size);
  const double log_h = x * std::log(y);  // log |H| with |H| = |Y|^|X|
  const double log_base_y_h = log_h / std::log(y);
  return {std::sqrt((x * y - 1.0) / denom), std::sqrt((y * log_base_y_h - 1.0) / denom)};
}

double default_grid_resolution(std::size_t n) { return n <= 2 ? 1.0 / 200.0 : 1.0 / 40.0; }

namespace {

bool better(double value, const std::vector<double>& point, double best_value, const std::vector<double>& best_point) {
  if (value != best_value) return value > best_value;
  return std::lexicographical_compare(point.begin(), point.end(), best_point.begin(), best_point.end());
}

std::vector<double> to_distribution(std::span<const int> counts, int divisions) {
  std::vector<double> out(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) out[i] = static_cast<double>(counts[i]) / divisions;
  return out;
}

// Fine-grid points within one coarse step (10 fine steps) of `center` in
// every coordinate, center excluded.
std::vector<std::vector<int>> refinement_points(const std::vector<int>& center, int fine_divisions) {
  const std::size_t n = center.size();
  std::vector<std::vector<int>> out;
  if (n == 1) return out;
  std::vector<int> offset(n - 1, -10);
  for (;;) {
    std::vector<int> point(n);
    int used = 0;
    bool ok = true;
    bool is_center = true;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      point[i] = center[i] + offset[i];
      used += point[i];
      ok = ok && point[i] >= 0;
      is_center = is_center && offset[i] == 0;
    }
    point[n - 1] = fine_divisions - used;
    ok = ok && point[n - 1] >= 0 && std::abs(point[n - 1] - center[n - 1]) <= 10;
    if (ok && !is_center) out.push_back(std::move(point));
    std::size_t i = 0;
    while (i < n - 1 && offset[i] == 10) offset[i++] = -10;
    if (i == n - 1) break;
    ++offset[i];
  }
  return out;
}

}  // namespace

CapacityReport capacity_search(const LearningMachine& machine, int m, const CapacitySearchOptions& options) {
  require_m(m);
  const std::size_t n = machine.observation_alphabet_size();
  const double resolution = options.grid_resolution > 0.0 ? options.grid_resolution : default_grid_resolution(n);
  const int divisions = static_cast<int>(std::lround(1.0 / resolution));
  if (divisions < 1) throw ArgumentError("grid resolution must be at most 1");
  check_type_budget(n, m, options.budget);
  const double coarse_count = type_count(n, divisions);
  if (coarse_count > options.max_points) {
    throw ResourceError("capacity grid has " + std::to_string(static_cast<long double>(coarse_count)) +
                        " points, limit is " + std::to_string(static_cast<long double>(options.max_points)));
  }

  if (coarse_count * type_count(n, m) > options.max_work) {
    throw ResourceError("capacity search would visit more than " +
                        std::to_string(static_cast<long double>(options.max_work)) + " (distribution, type) pairs");
  }

  std::vector<std::vector<int>> coarse;
  coarse.reserve(static_cast<std::size_t>(coarse_count));
  for_each_type(n, divisions, [&](std::span<const int> c) { coarse.emplace_back(c.begin(), c.end()); });

  auto evaluate = [&](const std::vector<std::vector<int>>& points, int div) {
    std::vector<GridPoint> out(points.size());
    parallel_for(points.size(), options.threads, [&](std::size_t i) {
      std::vector<double> d = to_distribution(points[i], div);
      const double a = machine_affinity(machine, Pmf::normalized(d), m, options.budget);
      out[i] = {std::move(d), a};
    });
    return out;
  };

  std::vector<GridPoint> evaluated = evaluate(coarse, divisions);
  std::size_t best = 0;
  for (std::size_t i = 1; i < evaluated.size(); ++i) {
    if (better(evaluated[i].affinity, evaluated[i].distribution, evaluated[best].affinity,
               evaluated[best].distribution)) {
      best = i;
    }
  }

  const int fine_divisions = 10 * divisions;
  std::vector<int> center = coarse[best];
  for (int& c : center) c *= 10;
  const std::vector<std::vector<int>> fine = refinement_points(center, fine_divisions);
  if (static_cast<double>(fine.size()) + coarse_count > options.max_points) {
    throw ResourceError("capacity refinement exceeds the point limit");
  }
  std::vector<GridPoint> refined = evaluate(fine, fine_divisions);

  GridPoint winner = evaluated[best];
  for (const auto& g : refined) {
    if (better(g.affinity, g.distribution, winner.affinity, winner.distribution)) winner = g;
  }
  evaluated.insert(evaluated.end(), std::make_move_iterator(refined.begin()), std::make_move_iterator(refined.end()));

  return CapacityReport{machine.name(),       m, std::move(evaluated), winner.affinity,
                        Pmf::normalized(winner.distribution), 1.0 / divisions};
}

EntropyBounds entropy_capacity_bounds(const LearningMachine& machine, const Pmf& p, int m, double budget) {
  EntropyBounds out;
  out.affinity = machine_affinity(machine, p, m, budget);
  const Pmf marginal = hypothesis_marginal(machine, p, m, budget);

  CompensatedSum mi;
  std::vector<HypothesisWeight> row;
  const double total = for_each_weighted_type(p, m, [&](std::span<const int> c, double w) {
    machine.kernel(c, row);
    // Sparse rows may repeat an index after post-processing; merge first.
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
    std::size_t i = 0;
    while (i < row.size()) {
      double k = 0.0;
      const std::size_t h = row[i].index;
      for (; i < row.size() && row[i].index == h; ++i) k += row[i].probability;
      if (k > 0.0 && marginal[h] > 0.0) mi.add(w * k * std::log(k / marginal[h]));
    }
  });
  out.mi_type_h = std::max(0.0, mi.value() / total);
  out.h_of_h = shannon_entropy(marginal);
  out.log_hypothesis_count = std::log(static_cast<double>(machine.hypothesis_count(m)));

  const double two_m = 2.0 * m;
  out.bound_mutual_information = std::sqrt(out.mi_type_h / two_m);
  out.bound_entropy = std::sqrt(out.h_of_h / two_m);
  out.bound_cardinality = std::sqrt(out.log_hypothesis_count / two_m);
  out.bound_type_count = std::sqrt(static_cast<double>(p.size()) * std::log1p(static_cast<double>(m)) / two_m);

  constexpr double slack = 1e-12;
  out.holds = out.affinity <= out.bound_mutual_information + slack && out.affinity <= out.bound_entropy + slack &&
              out.affinity <= out.bound_cardinality + slack && out.affinity <= out.bound_type_count + slack &&
              out.bound_mutual_information <= out.bound_entropy + slack &&
              out.bound_entropy <= out.bound_cardinality + slack;
  return out;
}

}  // namespace lcap
