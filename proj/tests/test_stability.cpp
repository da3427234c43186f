#include <doctest.h>

#include <cmath>

#include "lcap/capacity.hpp"
#include "lcap/invariants.hpp"
#include "lcap/numeric.hpp"
#include "lcap/rng.hpp"
#include "lcap/stability.hpp"
#include "oracles.hpp"

using namespace lcap;

TEST_CASE("stability examples") {
  CHECK(stability_s(make_type_ignoring_machine(3, Pmf({0.4, 0.6})), Pmf({0.2, 0.3, 0.5}), 5) ==
        doctest::Approx(1.0).epsilon(1e-14));
  const LearningMachine avg = make_empirical_average_machine();
  CHECK(stability_s(avg, Pmf::bernoulli(0.5), 10) == doctest::Approx(0.876953125).epsilon(1e-13));
  const std::vector<double> brute = oracle::brute_force_joint(avg, {0.7, 0.3}, 4);
  CHECK(stability_s(avg, Pmf::bernoulli(0.3), 4) ==
        doctest::Approx(1.0 - oracle::affinity_of(brute, 2, 5)).epsilon(1e-13));
}

TEST_CASE("collision bound examples") {
  const LearningMachine constant = make_constant_machine(2);
  CHECK(collision_lower_bound(constant, Pmf::bernoulli(0.3), 4) == doctest::Approx(1.0));
  CHECK(stability_s(constant, Pmf::bernoulli(0.3), 4) == doctest::Approx(1.0));
  CHECK(collision_lower_bound(make_empirical_average_machine(), Pmf::bernoulli(0.5), 4) ==
        doctest::Approx(70.0 / 256).epsilon(1e-14));

  // Majority at phi = 0.3, m = 11: 1 - 2 P(H=0) P(H=1) with log-space tails.
  double p1 = 0.0;
  for (int k = 6; k <= 11; ++k) p1 += std::exp(log_binomial(11, k) + k * std::log(0.3) + (11 - k) * std::log(0.7));
  const double expected = 1.0 - 2.0 * p1 * (1.0 - p1);
  CHECK(collision_lower_bound(make_majority_machine(), Pmf::bernoulli(0.3), 11) ==
        doctest::Approx(expected).epsilon(1e-13));
  CHECK(expected == doctest::Approx(0.8557886539).epsilon(1e-9));
  CHECK(stability_s(make_majority_machine(), Pmf::bernoulli(0.3), 11) >= expected);
}

TEST_CASE("stability plus affinity is one") {
  SplitMix64 rng(31);
  for (std::size_t n : {2u, 3u}) {
    for (const auto& machine : machine_zoo(n, 8)) {
      for (int m = 1; m <= 7; ++m) {
        const Pmf p = Pmf::normalized(random_simplex_point(rng, n));
        const StabilityReport r = stability_report(machine, p, m);
        CHECK(std::abs(r.s_value + r.affinity - 1.0) <= 1e-12);
        CHECK(r.s_value >= r.collision_lower_bound - 1e-12);
        CHECK(r.s_value >= 0.0);
        CHECK(r.s_value <= 1.0 + 1e-15);
      }
    }
  }
}

TEST_CASE("slot conditioning agrees with the joint") {
  const LearningMachine lazy = make_lazy_learner(3);
  const Pmf p({0.5, 0.2, 0.3});
  const JointPmf j = joint_ztrn_h(lazy, p, 4);
  for (std::size_t z = 0; z < 3; ++z) {
    const Pmf a = hypothesis_given_slot(lazy, p, 4, z);
    const Pmf b = j.y_given_x(z);
    for (std::size_t h = 0; h < a.size(); ++h) CHECK(std::abs(a[h] - b[h]) <= 1e-12);
  }
}

TEST_CASE("stability at the capacity argmax grows with m") {
  for (const LearningMachine& machine :
       {make_empirical_average_machine(), make_majority_machine(), make_randomized_label_machine(2),
        make_lazy_learner(2)}) {
    double last = -1.0;
    for (int m : {10, 25, 50, 100, 200}) {
      const CapacityReport r = capacity_search(machine, m);
      const double s = stability_s(machine, r.argmax_distribution, m);
      CHECK(std::abs(s - (1.0 - r.capacity_estimate)) <= 1e-12);
      CHECK_MESSAGE(s > last, machine.name() << " m=" << m);
      last = s;
    }
  }
  CHECK(distribution_free_stability(make_empirical_average_machine(), 11) ==
        doctest::Approx(1.0 - bernoulli_affinity_closed(0.5, 11)).epsilon(1e-13));
}
