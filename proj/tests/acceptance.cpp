// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "lcap/capacity.hpp"
#include "lcap/invariants.hpp"
#include "lcap/montecarlo.hpp"
#include "lcap/risk.hpp"
#include "lcap/rng.hpp"
#include "lcap/stability.hpp"
#include "oracles.hpp"

using namespace lcap;

namespace {

// Tolerances and limits, fixed here so the criteria cannot drift.
constexpr double kTable1Decimals = 1e-4;
constexpr double kTable1RuntimeS = 1.0;
constexpr double kTable1McTol = 0.015;
constexpr double kMcRuntimeS = 5.0;
constexpr double kExactTol = 1e-12;
constexpr double kStdErrors = 3.0;
constexpr double kTable2McTol = 0.02;
constexpr double kOracleTol = 1e-10;
constexpr double kOracleRuntimeS = 30.0;
constexpr double kClosedFormTol = 1e-10;
constexpr double kSqrtLawLow = 0.95;
constexpr double kSqrtLawHigh = 1.05;
constexpr double kSqrtLawSlack = 1.02;
constexpr double kSuiteRuntimeS = 60.0;
constexpr double kProductTol = 1e-6;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt2(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

const int kTableM[] = {10, 25, 50, 100, 200};

Outcome c1_table1_capacities() {
  const double expected[] = {0.1230, 0.0806, 0.0561, 0.0398, 0.0282};
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::string values;
  for (int i = 0; i < 5; ++i) {
    const double c = bernoulli_affinity_closed(0.5, kTableM[i]);
    const double rounded = std::round(c * 1e4) / 1e4;
    values += fmt(" %.4f", rounded);
    if (std::abs(rounded - expected[i]) > kTable1Decimals / 2) o.pass = false;
  }
  const double t = seconds_since(t0);
  if (t >= kTable1RuntimeS) o.pass = false;
  o.detail = "capacities" + values + fmt(", %.3f s", t);
  return o;
}

Outcome c2_table1_mc() {
  const double expected[] = {0.3780, 0.4194, 0.4426, 0.4613, 0.4712};
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const McResult r = simulate_majority(McConfig{});
  const double t = seconds_since(t0);
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) worst = std::max(worst, std::abs(r.rows[static_cast<std::size_t>(i)].empirical_risk_mean - expected[i]));
  o.pass = worst <= kTable1McTol && t < kMcRuntimeS;
  o.detail = fmt2("max |R_emp - expected| = %.4f, %.3f s", worst, t);
  return o;
}

Outcome c3_equality_claim() {
  Outcome o;
  const LearningMachine avg = make_empirical_average_machine();
  double worst_exact = 0.0;
  for (int m = 1; m <= 12; ++m) {
    const double r = empirical_risk(avg, Pmf::bernoulli(0.5), m, majority_vote_loss(m));
    worst_exact = std::max(worst_exact, std::abs(r - (0.5 - bernoulli_affinity_closed(0.5, m))));
  }
  double worst_z = 0.0;
  McConfig cfg;
  cfg.m_values = {1, 2, 5, 10, 11, 25, 50, 100, 200};
  for (const McRow& row : simulate_majority(cfg).rows) {
    const double target = 0.5 - bernoulli_affinity_closed(0.5, row.m);
    if (row.standard_error == 0.0) {
      if (row.empirical_risk_mean != target) worst_z = INFINITY;
      continue;
    }
    worst_z = std::max(worst_z, std::abs(row.empirical_risk_mean - target) / row.standard_error);
  }
  o.pass = worst_exact <= kExactTol && worst_z <= kStdErrors;
  o.detail = fmt2("exact max deviation %.2e (m<=12), Monte Carlo max %.2f standard errors", worst_exact, worst_z);
  return o;
}

Outcome c4_table2() {
  const double expected[] = {0.4460, 0.4811, 0.4928, 0.4947, 0.4966};
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const McResult r = simulate_randomized_classifier(McConfig{});
  const double t = seconds_since(t0);
  double worst = 0.0, worst_pair = 0.0;
  for (int i = 0; i < 5; ++i) {
    const McRow& row = r.rows[static_cast<std::size_t>(i)];
    worst = std::max(worst, std::abs(row.empirical_risk_mean - expected[i]));
    worst_pair = std::max(worst_pair, std::abs((0.5 - row.empirical_risk_mean) - 1.0 / (2.0 * row.m)));
  }
  o.pass = worst <= kTable2McTol && worst_pair <= kTable2McTol && t < kMcRuntimeS;
  o.detail = fmt2("max |R_emp - expected| = %.4f, max |0.5 - R_emp - 1/(2m)| = %.4f", worst, worst_pair) +
             fmt(", %.3f s", t);
  return o;
}

Outcome c5_oracle_equivalence() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  SplitMix64 rng(5);
  std::size_t cases = 0;
  double worst = 0.0;
  for (std::size_t n = 1; n <= 3; ++n) {
    const int max_m = n <= 2 ? 8 : 6;
    for (const auto& machine : machine_zoo(n, 55)) {
      for (int m = 1; m <= max_m; ++m) {
        for (int rep = 0; rep < 2; ++rep) {
          const Pmf p = rep == 0 ? Pmf::uniform(n) : Pmf::normalized(random_simplex_point(rng, n));
          const std::vector<double> pv(p.masses().begin(), p.masses().end());
          const std::vector<double> brute = oracle::brute_force_joint(machine, pv, m);
          const JointPmf j = joint_ztrn_h(machine, p, m);
          for (std::size_t i = 0; i < brute.size(); ++i) worst = std::max(worst, std::abs(brute[i] - j.masses()[i]));
          worst = std::max(worst, std::abs(oracle::affinity_of(brute, n, j.y_size()) - machine_affinity(machine, p, m)));
          ++cases;
        }
      }
    }
  }
  const double t = seconds_since(t0);
  o.pass = worst <= kOracleTol && t < kOracleRuntimeS;
  o.detail = std::to_string(cases) + " cases" + fmt2(", max deviation %.2e, %.3f s", worst, t);
  return o;
}

Outcome c6_tight_loss() {
  Outcome o;
  double worst = 0.0;
  std::size_t cases = 0, violations = 0, random_cases = 0;
  SplitMix64 rng(66);
  for (const auto& machine : machine_zoo(2, 66)) {
    for (int m = 1; m <= 10; ++m) {
      for (int i = 1; i <= 9; ++i) {
        const Pmf p = Pmf::bernoulli(i / 10.0);
        const double a = machine_affinity(machine, p, m);
        worst = std::max(worst, std::abs(risk_gap_check(machine, p, m, tight_loss(machine, p, m)).gap - a));
        worst = std::max(worst, std::abs(risk_gap_check(machine, p, m, tight_loss_reversed(machine, p, m)).gap + a));
        ++cases;
      }
    }
    for (int i = 0; i < 100; ++i) {
      const int m = rng.uniform_int(1, 10);
      const Pmf p = Pmf::bernoulli(rng.uniform_int(1, 9) / 10.0);
      const std::size_t hs = machine.hypothesis_count(m);
      std::vector<double> v(hs * 2);
      for (double& x : v) x = rng.uniform();
      if (!risk_gap_check(machine, p, m, LossTable(hs, 2, std::move(v))).holds) ++violations;
      ++random_cases;
    }
  }
  o.pass = worst <= kExactTol && violations == 0;
  o.detail = std::to_string(cases) + fmt(" tight-loss cases, max |gap - affinity| %.2e; ", worst) +
             std::to_string(violations) + " of " + std::to_string(random_cases) + " random losses over the bound";
  return o;
}

Outcome c7_randomized_closed_form() {
  Outcome o;
  double worst = 0.0;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (int m = 1; m <= 6; ++m) {
      worst = std::max(worst, std::abs(machine_affinity(make_randomized_label_machine(n), Pmf::uniform(n), m) -
                                       randomized_capacity_closed(m, n)));
    }
  }
  o.pass = worst <= kClosedFormTol;
  o.detail = fmt("max deviation %.2e over m<=6, n<=4", worst);
  return o;
}

Outcome c8_sqrt_law() {
  Outcome o;
  std::string ratios;
  for (std::size_t n : {2u, 3u, 4u}) {
    const double r = lazy_affinity(Pmf::uniform(n), 200) * std::sqrt(2 * std::numbers::pi * 200 / (n - 1.0));
    ratios += fmt(" %.4f", r);
    if (r < kSqrtLawLow || r > kSqrtLawHigh) o.pass = false;
  }
  // Tested set: uniform n in {2,3,4} at every table m, plus seeded random p.
  struct Case {
    Pmf p;
    int m;
  };
  std::vector<Case> cases;
  for (std::size_t n : {2u, 3u, 4u})
    for (int m : kTableM) cases.push_back({Pmf::uniform(n), m});
  SplitMix64 rng(8);
  for (int i = 0; i < 30; ++i) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(2, 4));
    cases.push_back({Pmf::normalized(random_simplex_point(rng, n)), i % 2 == 0 ? 100 : 200});
  }
  double worst = 0.0;
  std::string worst_case;
  std::size_t over = 0;
  for (const Case& c : cases) {
    const double ratio = lazy_affinity(c.p, c.m) / sqrt_law_bound(c.p, c.m);
    if (ratio > kSqrtLawSlack) ++over;
    if (ratio > worst) {
      worst = ratio;
      worst_case = "n=" + std::to_string(c.p.size()) + " m=" + std::to_string(c.m);
    }
  }
  if (worst > kSqrtLawSlack) o.pass = false;
  o.detail = "ratio to sqrt((n-1)/(2 pi m)) at m=200:" + ratios + "; lazy/bound max " + fmt("%.4f", worst) + " (" +
             worst_case + "), " + std::to_string(over) + " of " + std::to_string(cases.size()) + " cases above " +
             fmt("%.2f", kSqrtLawSlack);
  return o;
}

Outcome c9_suites() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::string failed;
  std::size_t total = 0;
  const std::vector<SuiteResult> results = run_invariant_suites(42, 1000);
  for (const SuiteResult& r : results) {
    total += r.instances;
    if (!r.passed()) {
      o.pass = false;
      failed += " " + r.name + "(" + std::to_string(r.failures) + ")";
    }
  }
  const double t = seconds_since(t0);
  if (t >= kSuiteRuntimeS) o.pass = false;
  o.detail = std::to_string(results.size()) + " suites, " + std::to_string(total) + " instances" +
             (failed.empty() ? std::string(", no failures") : ", failures:" + failed) + fmt(", %.2f s", t);
  return o;
}

Outcome c10_stability_identity() {
  Outcome o;
  double worst = 0.0;
  std::size_t cases = 0;
  for (const auto& machine : machine_zoo(2, 10)) {
    for (int m = 1; m <= 10; ++m) {
      for (int i = 0; i <= 10; ++i) {
        const Pmf p = Pmf::bernoulli(i / 10.0);
        worst = std::max(worst, std::abs(1.0 - stability_s(machine, p, m) - machine_affinity(machine, p, m)));
        ++cases;
      }
    }
  }
  SplitMix64 rng(10);
  for (const auto& machine : machine_zoo(3, 10)) {
    for (int m = 1; m <= 6; ++m) {
      const Pmf p = Pmf::normalized(random_simplex_point(rng, 3));
      worst = std::max(worst, std::abs(1.0 - stability_s(machine, p, m) - machine_affinity(machine, p, m)));
      ++cases;
    }
  }
  if (worst > kExactTol) o.pass = false;
  o.detail = std::to_string(cases) + fmt(" identity cases, max deviation %.2e; argmax:", worst);

  // Binary machines: argmax at phi = 1/2 up to the refinement step.
  for (const LearningMachine& machine : {make_empirical_average_machine(), make_majority_machine(),
                                         make_randomized_label_machine(2), make_lazy_learner(2)}) {
    std::string off;
    for (int m : {10, 11, 25}) {
      const CapacityReport r = capacity_search(machine, m);
      const double phi = r.argmax_distribution[1];
      if (std::abs(phi - 0.5) > r.grid_resolution / 10 + 1e-12) {
        o.pass = false;
        off += " m=" + std::to_string(m) + fmt(" at %.4f", phi);
      }
    }
    o.detail += " " + machine.name() + (off.empty() ? std::string(" ok") : off);
  }
  for (std::size_t n : {3u, 4u}) {
    const CapacityReport r = capacity_search(make_randomized_label_machine(n), 3);
    double dist = 0.0;
    for (std::size_t i = 0; i < n; ++i) dist = std::max(dist, std::abs(r.argmax_distribution[i] - 1.0 / n));
    const bool ok = dist <= r.grid_resolution / 10 + 1e-12 &&
                    std::abs(r.capacity_estimate - randomized_capacity_closed(3, n)) <= 1e-4;
    if (!ok) o.pass = false;
    o.detail += " randomized_label n=" + std::to_string(n) + (ok ? " ok" : fmt(" off by %.4f", dist));
  }
  return o;
}

Outcome c11_product_expansion() {
  Outcome o;
  const Pmf half = Pmf::bernoulli(0.5);
  double worst_gap = 0.0;
  std::size_t increases = 0;
  for (int i = 0; i <= 100; ++i) {
    const Pmf p = Pmf::bernoulli(i / 100.0);
    const double tv = tv_distance(p, half);
    double last = 1.0;
    for (std::size_t t = 1; t <= 60; ++t) {
      const double a = lemma1_product(p, half, t, 0.0).approximation;
      if (a > last) ++increases;
      last = a;
    }
    worst_gap = std::max(worst_gap, std::abs(lemma1_product(p, half).approximation - tv));
  }
  const double t1 = lemma1_product(half, half, 1).approximation;
  o.pass = increases == 0 && worst_gap <= kProductTol && t1 == 0.5;
  o.detail = std::to_string(increases) + fmt(" increases, max |limit - tv| %.2e, ", worst_gap) +
             fmt("T1 at s=0.5 is %.17g", t1);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 fair-coin capacities", c1_table1_capacities},
      {"2 majority Monte Carlo", c2_table1_mc},
      {"3 majority-loss gap equality", c3_equality_claim},
      {"4 randomized classifier Monte Carlo", c4_table2},
      {"5 type enumeration vs sequence oracle", c5_oracle_equivalence},
      {"6 tight loss attains the affinity", c6_tight_loss},
      {"7 randomized machine closed form", c7_randomized_closed_form},
      {"8 square-root law", c8_sqrt_law},
      {"9 inequality suites", c9_suites},
      {"10 capacity-stability identity and argmax", c10_stability_identity},
      {"11 infinite-product convergence", c11_product_expansion},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s  criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures;
}
