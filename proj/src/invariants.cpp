#include "lcap/invariants.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>

#include "lcap/affinity.hpp"
#include "lcap/capacity.hpp"
#include "lcap/error.hpp"
#include "lcap/risk.hpp"
#include "lcap/rng.hpp"
#include "lcap/stability.hpp"

namespace lcap {

std::vector<LearningMachine> machine_zoo(std::size_t n, std::uint64_t seed) {
  std::vector<LearningMachine> out;
  if (n == 2) {
    out.push_back(make_empirical_average_machine());
    out.push_back(make_majority_machine());
    // Majority as a deterministic function of the count.
    out.push_back(post_process(
        make_empirical_average_machine(), "majority_of_average", [](int) { return std::size_t{2}; },
        [](std::size_t k, int m, std::vector<HypothesisWeight>& o) {
          o.push_back({2 * static_cast<int>(k) >= m ? std::size_t{1} : std::size_t{0}, 1.0});
        }));
  }
  out.push_back(make_randomized_label_machine(n));
  out.push_back(make_lazy_learner(n));
  out.push_back(make_constant_machine(n));
  SplitMix64 rng(seed);
  out.push_back(make_type_ignoring_machine(n, Pmf::normalized(random_simplex_point(rng, 3))));
  out.push_back(make_random_kernel_machine(n, 4, rng()));
  out.push_back(post_process(make_random_kernel_machine(n, 4, rng()), "random_kernel_processed",
                             [](int) { return std::size_t{3}; }, random_channel(3, rng())));
  return out;
}

namespace {

constexpr double kSlack = 1e-12;

std::size_t draw_size(SplitMix64& rng, int lo, int hi) { return static_cast<std::size_t>(rng.uniform_int(lo, hi)); }

Pmf draw_pmf(SplitMix64& rng, std::size_t n) {
  // Occasionally zero out a coordinate so boundary cases are covered.
  std::vector<double> w = random_simplex_point(rng, n);
  if (n > 1 && rng.uniform() < 0.2) w[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(n) - 1))] = 0.0;
  return Pmf::normalized(std::move(w));
}

JointPmf draw_joint(SplitMix64& rng, std::size_t x, std::size_t y) {
  return JointPmf::normalized(x, y, random_simplex_point(rng, x * y));
}

std::vector<Pmf> draw_channel(SplitMix64& rng, std::size_t rows, std::size_t cols) {
  std::vector<Pmf> out;
  for (std::size_t r = 0; r < rows; ++r) out.push_back(draw_pmf(rng, cols));
  return out;
}

/// Joint of (A, H2) when A -> H1 -> H2 with P(A, H1) given.
JointPmf compose(const JointPmf& a_h1, std::span<const Pmf> h2_given_h1) {
  const std::size_t k = h2_given_h1.front().size();
  std::vector<double> mass(a_h1.x_size() * k, 0.0);
  for (std::size_t a = 0; a < a_h1.x_size(); ++a) {
    for (std::size_t h = 0; h < a_h1.y_size(); ++h) {
      for (std::size_t j = 0; j < k; ++j) mass[a * k + j] += a_h1.at(a, h) * h2_given_h1[h][j];
    }
  }
  return JointPmf::normalized(a_h1.x_size(), k, std::move(mass));
}

/// P(A, (B, C)) flattened with (b, c) -> b * c_size + c, from P(A, B, C).
JointPmf flatten_bc(std::size_t a, std::size_t bc, const std::vector<double>& abc) {
  return JointPmf::normalized(a, bc, abc);
}

JointPmf marginal_ab(std::size_t a, std::size_t b, std::size_t c, const std::vector<double>& abc) {
  std::vector<double> mass(a * b, 0.0);
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < b; ++j)
      for (std::size_t k = 0; k < c; ++k) mass[i * b + j] += abc[(i * b + j) * c + k];
  return JointPmf::normalized(a, b, std::move(mass));
}

struct MachineCase {
  LearningMachine machine;
  Pmf p;
  int m;
  std::string label;
};

MachineCase draw_machine_case(SplitMix64& rng, int max_m) {
  const std::size_t n = draw_size(rng, 2, 3);
  std::vector<LearningMachine> zoo = machine_zoo(n, rng());
  const std::size_t pick = static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(zoo.size()) - 1));
  const int m = rng.uniform_int(1, n == 2 ? max_m : std::min(max_m, 6));
  Pmf p = draw_pmf(rng, n);
  std::string label = zoo[pick].name() + " n=" + std::to_string(n) + " m=" + std::to_string(m);
  return {std::move(zoo[pick]), std::move(p), m, std::move(label)};
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) h = (h ^ ch) * 0x100000001b3ULL;
  return h;
}

using Check = std::function<bool(SplitMix64&, std::string&)>;

SuiteResult run_random(const std::string& name, std::uint64_t seed, std::size_t instances, const Check& check) {
  SuiteResult r{name, instances, 0, {}};
  for (std::size_t i = 0; i < instances; ++i) {
    SplitMix64 rng(derive_seed(seed, fnv1a(name), i));
    std::string detail;
    bool ok = false;
    try {
      ok = check(rng, detail);
    } catch (const std::exception& e) {
      detail += std::string(" threw: ") + e.what();
    }
    if (!ok) {
      if (r.failures == 0) r.first_failure = "instance " + std::to_string(i) + ": " + detail;
      ++r.failures;
    }
  }
  return r;
}

std::string fmt(const char* f, double a, double b) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

bool dpi(SplitMix64& rng, std::string& detail) {
  if (rng.uniform() < 0.1) {
    // Machine-level chain S_m -> H1 -> H2.
    MachineCase c = draw_machine_case(rng, 6);
    const std::size_t k = draw_size(rng, 2, 4);
    LearningMachine outer = post_process(c.machine, "processed", [k](int) { return k; }, random_channel(k, rng()));
    const double a1 = machine_affinity(c.machine, c.p, c.m);
    const double a2 = machine_affinity(outer, c.p, c.m);
    detail = c.label + fmt(" I(Z,H1)=%.17g I(Z,H2)=%.17g", a1, a2);
    return a2 <= a1 + kSlack;
  }
  const JointPmf a_h1 = draw_joint(rng, draw_size(rng, 2, 4), draw_size(rng, 2, 4));
  const std::vector<Pmf> ch = draw_channel(rng, a_h1.y_size(), draw_size(rng, 2, 4));
  const double a1 = mutual_affinity(a_h1);
  const double a2 = mutual_affinity(compose(a_h1, ch));
  detail = fmt("I(A,H1)=%.17g I(A,H2)=%.17g", a1, a2);
  return a2 <= a1 + kSlack;
}

bool info_cant_hurt(SplitMix64& rng, std::string& detail) {
  const std::size_t a = draw_size(rng, 2, 4), b = draw_size(rng, 2, 4), c = draw_size(rng, 2, 4);
  const std::vector<double> abc = random_simplex_point(rng, a * b * c);
  const double with_c = mutual_affinity(flatten_bc(a, b * c, abc));
  const double without = mutual_affinity(marginal_ab(a, b, c, abc));
  detail = fmt("I(A,(B,C))=%.17g I(A,B)=%.17g", with_c, without);
  return with_c >= without - kSlack;
}

bool markov_collapse(SplitMix64& rng, std::string& detail) {
  const std::size_t a = draw_size(rng, 2, 4), b = draw_size(rng, 2, 4), c = draw_size(rng, 2, 4);
  const JointPmf ab = draw_joint(rng, a, b);
  const std::vector<Pmf> c_given_b = draw_channel(rng, b, c);
  std::vector<double> abc(a * b * c);
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < b; ++j)
      for (std::size_t k = 0; k < c; ++k) abc[(i * b + j) * c + k] = ab.at(i, j) * c_given_b[j][k];
  const double with_c = mutual_affinity(flatten_bc(a, b * c, abc));
  const double without = mutual_affinity(ab);
  detail = fmt("I(A,(B,C))=%.17g I(A,B)=%.17g", with_c, without);
  return std::abs(with_c - without) <= kSlack;
}

bool event_bound(SplitMix64& rng, std::string& detail) {
  const JointPmf j = draw_joint(rng, draw_size(rng, 2, 6), draw_size(rng, 2, 6));
  const Pmf py = j.marginal_y();
  for (std::size_t y = 0; y < j.y_size(); ++y) {
    if (py[y] == 0.0) continue;
    const double info = information_of_event(j, y);
    if (info > 1.0 - py[y] + kSlack) {
      detail = fmt("event info %.17g exceeds 1 - P(y) = %.17g", info, 1.0 - py[y]);
      return false;
    }
  }
  return true;
}

bool pinsker(SplitMix64& rng, std::string& detail) {
  const std::size_t n = draw_size(rng, 2, 6);
  const Pmf p = draw_pmf(rng, n);
  const Pmf q = Pmf::normalized(random_simplex_point(rng, n));
  const double tv = tv_distance(p, q);
  const double bound = std::sqrt(kl_divergence(p, q) / 2.0);
  const JointPmf j = draw_joint(rng, draw_size(rng, 2, 6), draw_size(rng, 2, 6));
  const double aff = mutual_affinity(j);
  const double aff_bound = std::sqrt(mutual_information(j) / 2.0);
  detail = fmt("tv=%.17g sqrt(KL/2)=%.17g", tv, bound) + fmt(" affinity=%.17g sqrt(MI/2)=%.17g", aff, aff_bound);
  return tv <= bound + kSlack && aff <= aff_bound + kSlack;
}

bool affinity_forms(SplitMix64& rng, std::string& detail) {
  const JointPmf j = draw_joint(rng, draw_size(rng, 1, 6), draw_size(rng, 1, 6));
  const double a = mutual_affinity(j), y = mutual_affinity_over_y(j), x = mutual_affinity_over_x(j);
  detail = fmt("joint form %.17g, E_Y form %.17g", a, y) + fmt(", E_X form %.17g (E_Y %.17g)", x, y);
  return std::abs(a - y) <= kSlack && std::abs(a - x) <= kSlack;
}

bool collision(SplitMix64& rng, std::string& detail) {
  MachineCase c = draw_machine_case(rng, 8);
  const StabilityReport s = stability_report(c.machine, c.p, c.m);
  detail = c.label + fmt(" s=%.17g collision=%.17g", s.s_value, s.collision_lower_bound) +
           fmt(" affinity=%.17g s+affinity-1=%.3g", s.affinity, s.s_value + s.affinity - 1.0);
  return s.s_value >= s.collision_lower_bound - kSlack && std::abs(s.s_value + s.affinity - 1.0) <= kSlack;
}

bool entropy(SplitMix64& rng, std::string& detail) {
  MachineCase c = draw_machine_case(rng, 8);
  const EntropyBounds b = entropy_capacity_bounds(c.machine, c.p, c.m);
  detail = c.label + fmt(" affinity=%.17g mi_bound=%.17g", b.affinity, b.bound_mutual_information) +
           fmt(" entropy_bound=%.17g type_bound=%.17g", b.bound_entropy, b.bound_type_count);
  return b.holds;
}

bool risk_gap(SplitMix64& rng, std::string& detail) {
  MachineCase c = draw_machine_case(rng, 8);
  const std::size_t hs = c.machine.hypothesis_count(c.m);
  std::vector<double> v(hs * c.p.size());
  for (double& x : v) x = rng.uniform() < 0.3 ? std::round(rng.uniform()) : rng.uniform();
  const RiskGapCheck g = risk_gap_check(c.machine, c.p, c.m, LossTable(hs, c.p.size(), std::move(v)));
  detail = c.label + fmt(" gap=%.17g affinity=%.17g", g.gap, g.affinity);
  return g.holds;
}

bool product_expansion(SplitMix64& rng, std::string& detail) {
  const std::size_t n = draw_size(rng, 2, 5);
  const Pmf p = draw_pmf(rng, n);
  const Pmf q = draw_pmf(rng, n);
  const double tv = tv_distance(p, q);
  double previous = 1.0;
  for (std::size_t t = 1; t <= 40; ++t) {
    const Lemma1Result r = lemma1_product(p, q, t, 0.0);
    if (r.approximation < tv - kSlack || r.approximation > previous + kSlack) {
      detail = fmt("step bound %.17g vs tv %.17g", r.approximation, tv);
      return false;
    }
    previous = r.approximation;
    if (r.state.converged) break;
  }
  return true;
}

SuiteResult partial_order() {
  SuiteResult r{"partial_order", 0, 0, {}};
  for (int m : {11, 51}) {
    for (int i = 0; i <= 200; ++i) {
      const double phi = i / 200.0;
      ++r.instances;
      const double major = majority_affinity_closed(phi, m);
      const double avg = bernoulli_affinity_closed(phi, m);
      if (major > avg + kSlack) {
        if (r.failures == 0) r.first_failure = "m=" + std::to_string(m) + fmt(" phi=%.17g majority %.17g", phi, major);
        ++r.failures;
      }
    }
  }
  return r;
}

const std::map<std::string, Check>& checks() {
  static const std::map<std::string, Check> table{
      {"dpi", dpi},
      {"info_cant_hurt", info_cant_hurt},
      {"markov_collapse", markov_collapse},
      {"event_bound", event_bound},
      {"pinsker", pinsker},
      {"affinity_forms", affinity_forms},
      {"collision_bound", collision},
      {"entropy_bounds", entropy},
      {"risk_gap", risk_gap},
      {"product_expansion", product_expansion},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& invariant_suite_names() {
  static const std::vector<std::string> names{"dpi",          "info_cant_hurt",  "markov_collapse", "event_bound",
                                              "pinsker",      "affinity_forms",  "collision_bound", "entropy_bounds",
                                              "partial_order", "risk_gap",       "product_expansion"};
  return names;
}

SuiteResult run_invariant_suite(const std::string& name, std::uint64_t seed, std::size_t instances) {
  if (name == "partial_order") return partial_order();
  const auto it = checks().find(name);
  if (it == checks().end()) throw ArgumentError("unknown invariant suite '" + name + "'");
  return run_random(name, seed, instances, it->second);
}

std::vector<SuiteResult> run_invariant_suites(std::uint64_t seed, std::size_t instances) {
  std::vector<SuiteResult> out;
  for (const auto& name : invariant_suite_names()) out.push_back(run_invariant_suite(name, seed, instances));
  return out;
}

}  // namespace lcap
