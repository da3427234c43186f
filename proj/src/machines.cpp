#include "lcap/machines.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "lcap/rng.hpp"

namespace lcap {

TypeVector::TypeVector(std::vector<int> counts) : counts_(std::move(counts)) {
  if (counts_.empty()) throw ArgumentError("type vector needs at least one symbol");
  for (int c : counts_) {
    if (c < 0) throw ArgumentError("type counts must be >= 0");
    m_ += c;
  }
}

double log_multinomial(std::span<const int> counts) {
  int m = 0;
  double lw = 0.0;
  for (int c : counts) {
    m += c;
    lw -= log_factorial(c);
  }
  return lw + log_factorial(m);
}

double type_count(std::size_t n, int m) {
  if (n == 0 || m < 0) return 0.0;
  return binomial_count(m + static_cast<int>(n) - 1, static_cast<int>(n) - 1);
}

std::size_t type_rank(std::span<const int> counts) {
  const std::size_t n = counts.size();
  int remaining = std::accumulate(counts.begin(), counts.end(), 0);
  double rank = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const int c = counts[i];
    // Compositions sharing the prefix but with a larger value here come first.
    if (remaining - c - 1 >= 0) rank += type_count(n - i, remaining - c - 1);
    remaining -= c;
  }
  return static_cast<std::size_t>(rank);
}

std::vector<WeightedType> enumerate_types(std::size_t n, int m) {
  std::vector<WeightedType> out;
  out.reserve(static_cast<std::size_t>(type_count(n, m)));
  for_each_type(n, m, [&](std::span<const int> c) {
    out.push_back({TypeVector(std::vector<int>(c.begin(), c.end())), log_multinomial(c)});
  });
  return out;
}

void check_type_budget(std::size_t n, int m, double budget) {
  const double count = type_count(n, m);
  if (count > budget) {
    throw ResourceError("exact enumeration needs " + std::to_string(static_cast<long double>(count)) +
                        " types, budget is " + std::to_string(static_cast<long double>(budget)));
  }
}

LearningMachine::LearningMachine(std::string name, std::size_t observation_alphabet_size,
                                 HypothesisCount hypothesis_count, Kernel kernel)
    : name_(std::move(name)),
      n_(observation_alphabet_size),
      hypothesis_count_(std::move(hypothesis_count)),
      kernel_(std::move(kernel)) {
  if (n_ == 0) throw ArgumentError("observation alphabet must be nonempty");
}

void LearningMachine::kernel(std::span<const int> counts, std::vector<HypothesisWeight>& out) const {
  if (counts.size() != n_) throw DimensionError("type length differs from observation alphabet");
  out.clear();
  kernel_(counts, std::accumulate(counts.begin(), counts.end(), 0), out);
}

Pmf LearningMachine::kernel_pmf(const TypeVector& type) const {
  std::vector<HypothesisWeight> sparse;
  kernel(type.counts(), sparse);
  std::vector<double> dense(hypothesis_count(type.m()), 0.0);
  for (const auto& hw : sparse) dense.at(hw.index) += hw.probability;
  return Pmf(std::move(dense));
}

LearningMachine make_empirical_average_machine() {
  return LearningMachine(
      "empirical_average", 2, [](int m) { return static_cast<std::size_t>(m) + 1; },
      [](std::span<const int> c, int, std::vector<HypothesisWeight>& out) {
        out.push_back({static_cast<std::size_t>(c[1]), 1.0});
      });
}

LearningMachine make_majority_machine() {
  return LearningMachine(
      "majority", 2, [](int) { return std::size_t{2}; },
      [](std::span<const int> c, int m, std::vector<HypothesisWeight>& out) {
        out.push_back({2 * c[1] >= m ? std::size_t{1} : std::size_t{0}, 1.0});
      });
}

LearningMachine make_randomized_label_machine(std::size_t n) {
  return LearningMachine(
      "randomized_label", n, [n](int) { return n; },
      [](std::span<const int> c, int m, std::vector<HypothesisWeight>& out) {
        for (std::size_t z = 0; z < c.size(); ++z) {
          if (c[z] > 0) out.push_back({z, static_cast<double>(c[z]) / m});
        }
      });
}

LearningMachine make_lazy_learner(std::size_t n) {
  return LearningMachine(
      "lazy", n, [n](int m) { return static_cast<std::size_t>(type_count(n, m)); },
      [](std::span<const int> c, int, std::vector<HypothesisWeight>& out) {
        out.push_back({type_rank(c), 1.0});
      });
}

LearningMachine make_constant_machine(std::size_t n) {
  return LearningMachine(
      "constant", n, [](int) { return std::size_t{1}; },
      [](std::span<const int>, int, std::vector<HypothesisWeight>& out) { out.push_back({0, 1.0}); });
}

LearningMachine make_type_ignoring_machine(std::size_t n, Pmf hypothesis_distribution) {
  const std::size_t k = hypothesis_distribution.size();
  return LearningMachine(
      "type_ignoring", n, [k](int) { return k; },
      [dist = std::move(hypothesis_distribution)](std::span<const int>, int, std::vector<HypothesisWeight>& out) {
        for (std::size_t h = 0; h < dist.size(); ++h) {
          if (dist[h] > 0.0) out.push_back({h, dist[h]});
        }
      });
}

namespace {

void random_row(std::uint64_t seed, std::size_t size, std::vector<HypothesisWeight>& out) {
  SplitMix64 rng(seed);
  std::vector<double> w(size);
  double total = 0.0;
  for (auto& x : w) {
    // Cubing spreads the rows between near-uniform and near-deterministic.
    const double u = rng.uniform();
    x = u * u * u;
    total += x;
  }
  if (!(total > 0.0)) {
    out.push_back({0, 1.0});
    return;
  }
  for (std::size_t h = 0; h < size; ++h) {
    if (w[h] > 0.0) out.push_back({h, w[h] / total});
  }
}

}  // namespace

LearningMachine make_random_kernel_machine(std::size_t n, std::size_t hypotheses, std::uint64_t seed) {
  if (hypotheses == 0) throw ArgumentError("random machine needs at least one hypothesis");
  return LearningMachine(
      "random_kernel", n, [hypotheses](int) { return hypotheses; },
      [hypotheses, seed](std::span<const int> c, int m, std::vector<HypothesisWeight>& out) {
        std::uint64_t key = mix64(seed ^ static_cast<std::uint64_t>(m));
        for (int v : c) key = mix64(key ^ static_cast<std::uint64_t>(v));
        random_row(key, hypotheses, out);
      });
}

LearningMachine post_process(LearningMachine inner, std::string name, LearningMachine::HypothesisCount count,
                             Channel channel) {
  const std::size_t n = inner.observation_alphabet_size();
  return LearningMachine(
      std::move(name), n, std::move(count),
      [inner = std::move(inner), channel = std::move(channel)](std::span<const int> c, int m,
                                                               std::vector<HypothesisWeight>& out) {
        std::vector<HypothesisWeight> first;
        std::vector<HypothesisWeight> second;
        inner.kernel(c, first);
        for (const auto& h1 : first) {
          second.clear();
          channel(h1.index, m, second);
          for (const auto& h2 : second) out.push_back({h2.index, h1.probability * h2.probability});
        }
      });
}

Channel random_channel(std::size_t outputs, std::uint64_t seed) {
  return [outputs, seed](std::size_t h1, int m, std::vector<HypothesisWeight>& out) {
    random_row(mix64(mix64(seed ^ static_cast<std::uint64_t>(m)) ^ h1), outputs, out);
  };
}

namespace {

void require_compatible(const LearningMachine& machine, const Pmf& p, int m) {
  if (p.size() != machine.observation_alphabet_size()) {
    throw DimensionError("distribution has " + std::to_string(p.size()) + " symbols, machine '" +
                         machine.name() + "' expects " + std::to_string(machine.observation_alphabet_size()));
  }
  if (m < 1) throw ArgumentError("training set size must be >= 1");
}

}  // namespace

JointPmf joint_ztrn_h(const LearningMachine& machine, const Pmf& p, int m, double budget) {
  require_compatible(machine, p, m);
  check_type_budget(p.size(), m, budget);
  const std::size_t n = p.size();
  const std::size_t hyp = machine.hypothesis_count(m);
  if (static_cast<double>(n) * static_cast<double>(hyp) > 4.0 * budget) {
    throw ResourceError("joint table for machine '" + machine.name() + "' exceeds the budget");
  }
  std::vector<CompensatedSum> acc(n * hyp);
  std::vector<HypothesisWeight> row;
  const double total = for_each_weighted_type(p, m, [&](std::span<const int> c, double w) {
    machine.kernel(c, row);
    for (std::size_t z = 0; z < n; ++z) {
      if (c[z] == 0) continue;
      const double wz = w * c[z] / m;
      for (const auto& h : row) {
        if (h.index >= hyp) throw DimensionError("kernel produced a hypothesis outside the alphabet");
        acc[z * hyp + h.index].add(wz * h.probability);
      }
    }
  });
  std::vector<double> mass(n * hyp);
  for (std::size_t i = 0; i < mass.size(); ++i) mass[i] = acc[i].value() / total;
  return JointPmf(n, hyp, std::move(mass));
}

Pmf hypothesis_marginal(const LearningMachine& machine, const Pmf& p, int m, double budget) {
  require_compatible(machine, p, m);
  check_type_budget(p.size(), m, budget);
  const std::size_t hyp = machine.hypothesis_count(m);
  std::vector<CompensatedSum> acc(hyp);
  std::vector<HypothesisWeight> row;
  const double total = for_each_weighted_type(p, m, [&](std::span<const int> c, double w) {
    machine.kernel(c, row);
    for (const auto& h : row) {
      if (h.index >= hyp) throw DimensionError("kernel produced a hypothesis outside the alphabet");
      acc[h.index].add(w * h.probability);
    }
  });
  std::vector<double> mass(hyp);
  for (std::size_t h = 0; h < hyp; ++h) mass[h] = acc[h].value() / total;
  return Pmf(std::move(mass));
}

}  // namespace lcap
