#include <doctest.h>

#include <cmath>

#include "declab/divergence.hpp"
#include "declab/mdp.hpp"
#include "test_helpers.hpp"

using namespace declab;
using namespace declab::testing;

namespace {

// Deterministic two-step instance: layer-1 actions route to the state of the
// same index; only layer 2 pays.
TabularMdp hand_instance() {
  TabularMdp mdp(2, 2, 2);
  mdp.set_initial({1.0, 0.0});
  for (int s = 0; s < 2; ++s) {
    for (int a = 0; a < 2; ++a) mdp.set_kernel(0, s, a, a, 1.0);
  }
  mdp.set_reward(1, 0, 0, OutcomeDist::bernoulli(0.5));
  mdp.set_reward(1, 0, 1, OutcomeDist::bernoulli(0.2));
  mdp.set_reward(1, 1, 0, OutcomeDist::bernoulli(0.1));
  mdp.set_reward(1, 1, 1, OutcomeDist::bernoulli(0.4));
  return mdp;
}

}  // namespace

TEST_CASE("value iteration") {
  SUBCASE("all-zero rewards") {
    TabularMdp mdp(3, 2, 2);
    mdp.set_initial({0.5, 0.5});
    for (int h = 0; h < 2; ++h) {
      for (int s = 0; s < 2; ++s) {
        for (int a = 0; a < 2; ++a) mdp.set_kernel(h, s, a, s, 1.0);
      }
    }
    const PlanResult plan = value_iteration(mdp);
    CHECK(plan.value == doctest::Approx(0.0));
    for (double v : plan.v) CHECK(v == doctest::Approx(0.0));
  }
  SUBCASE("horizon one reduces to the best mean") {
    TabularMdp mdp(1, 1, 3);
    mdp.set_initial({1.0});
    mdp.set_reward(0, 0, 0, OutcomeDist::bernoulli(0.3));
    mdp.set_reward(0, 0, 1, OutcomeDist::bernoulli(0.8));
    mdp.set_reward(0, 0, 2, OutcomeDist::bernoulli(0.5));
    const PlanResult plan = value_iteration(mdp);
    CHECK(plan.value == doctest::Approx(0.8));
    CHECK(plan.greedy.at(0, 0, 1) == doctest::Approx(1.0));
  }
  SUBCASE("two-step backward pass by hand") {
    const TabularMdp mdp = hand_instance();
    const PlanResult plan = value_iteration(mdp);
    CHECK(plan.value == doctest::Approx(0.5));
    CHECK(plan.greedy.at(0, 0, 0) == doctest::Approx(1.0));
    CHECK(plan.greedy.at(1, 0, 0) == doctest::Approx(1.0));
  }
  SUBCASE("planned value equals the occupancy-weighted rewards") {
    SplitRng rng(101);
    for (int trial = 0; trial < 25; ++trial) {
      const TabularMdp mdp = random_mdp(rng, 3, 3, 2);
      const PlanResult plan = value_iteration(mdp);
      CHECK(policy_value(mdp, plan.greedy) ==
            doctest::Approx(plan.value).epsilon(1e-9));
    }
  }
}

TEST_CASE("occupancy measures") {
  SUBCASE("horizon one is d1 times the policy") {
    TabularMdp mdp(1, 2, 2);
    mdp.set_initial({0.3, 0.7});
    const Policy pi = uniform_policy(1, 2, 2);
    const OccupancyMeasure occ = occupancy(mdp, pi);
    CHECK(occ.at(0, 0, 0) == doctest::Approx(0.15));
    CHECK(occ.at(0, 1, 1) == doctest::Approx(0.35));
  }
  SUBCASE("deterministic chain gives indicator occupancies") {
    const TabularMdp mdp = hand_instance();
    Policy pi(2, 2, 2);
    pi.at(0, 0, 1) = 1.0;
    pi.at(0, 1, 1) = 1.0;
    pi.at(1, 0, 0) = 1.0;
    pi.at(1, 1, 0) = 1.0;
    const OccupancyMeasure occ = occupancy(mdp, pi);
    CHECK(occ.at(0, 0, 1) == doctest::Approx(1.0));
    CHECK(occ.at(1, 1, 0) == doctest::Approx(1.0));
  }
  SUBCASE("flow conservation holds to machine precision") {
    SplitRng rng(103);
    for (int trial = 0; trial < 25; ++trial) {
      const TabularMdp mdp = random_mdp(rng, 3, 2, 3);
      const Policy pi = random_policy(rng, 3, 2, 3);
      CHECK(flow_residual(mdp, occupancy(mdp, pi)) <= 1e-12);
    }
  }
}

TEST_CASE("rollouts") {
  SUBCASE("deterministic MDP and policy yield a unique trajectory") {
    const TabularMdp mdp = hand_instance();
    Policy pi(2, 2, 2);
    pi.at(0, 0, 1) = 1.0;
    pi.at(0, 1, 1) = 1.0;
    pi.at(1, 0, 1) = 1.0;
    pi.at(1, 1, 1) = 1.0;
    SplitRng rng(5);
    const Trajectory traj = simulate(mdp, pi, rng);
    CHECK(traj.states_visited == std::vector<int>{0, 1});
    CHECK(traj.actions_taken == std::vector<int>{1, 1});
  }
  SUBCASE("degenerate reward pays every episode") {
    TabularMdp mdp(1, 1, 1);
    mdp.set_initial({1.0});
    mdp.set_reward(0, 0, 0, OutcomeDist::bernoulli(1.0));
    const Policy pi = uniform_policy(1, 1, 1);
    SplitRng rng(6);
    for (int i = 0; i < 20; ++i) {
      CHECK(simulate(mdp, pi, rng).total_reward() == doctest::Approx(1.0));
    }
  }
  SUBCASE("monte carlo value matches planning") {
    SplitRng rng(107);
    const TabularMdp mdp = random_mdp(rng, 3, 2, 2);
    const Policy pi = random_policy(rng, 3, 2, 2);
    const double exact = policy_value(mdp, pi);
    double total = 0.0;
    const int n = 100000;
    SplitRng sim_rng(11);
    for (int i = 0; i < n; ++i) total += simulate(mdp, pi, sim_rng).total_reward();
    CHECK(std::abs(total / n - exact) < 0.01);
  }
}

TEST_CASE("policy recovery from occupancies") {
  SplitRng rng(109);
  SUBCASE("round trip through a fully supported policy") {
    const TabularMdp mdp = random_mdp(rng, 3, 3, 2);
    const Policy pi = random_policy(rng, 3, 3, 2);
    const OccupancyMeasure occ = occupancy(mdp, pi);
    const Policy back = policy_from_occupancy(occ);
    const OccupancyMeasure occ2 = occupancy(mdp, back);
    for (std::size_t i = 0; i < occ.visits.size(); ++i) {
      CHECK(occ.visits[i] == doctest::Approx(occ2.visits[i]).epsilon(1e-9));
    }
  }
  SUBCASE("zero-mass states get the uniform row") {
    OccupancyMeasure occ;
    occ.horizon = 1;
    occ.states = 2;
    occ.actions = 2;
    occ.visits = {1.0, 0.0, 0.0, 0.0};  // state 1 unvisited
    const Policy pi = policy_from_occupancy(occ);
    CHECK(pi.at(0, 1, 0) == doctest::Approx(0.5));
    CHECK(pi.at(0, 1, 1) == doctest::Approx(0.5));
  }
}

TEST_CASE("local simulation bound") {
  SUBCASE("identical models give zero on both sides") {
    SplitRng rng(113);
    const TabularMdp mdp = random_mdp(rng, 2, 2, 2);
    const Policy pi = random_policy(rng, 2, 2, 2);
    const auto [lhs, rhs] = simulation_gap(mdp, mdp, pi);
    CHECK(lhs == doctest::Approx(0.0));
    CHECK(rhs == doctest::Approx(0.0));
  }
  SUBCASE("single perturbed reward is exact on both sides") {
    TabularMdp ref(2, 2, 1);
    ref.set_initial({0.4, 0.6});
    for (int s = 0; s < 2; ++s) ref.set_kernel(0, s, 0, s, 1.0);
    ref.set_reward(0, 0, 0, OutcomeDist::bernoulli(0.2));
    TabularMdp m = ref;
    m.set_reward(0, 0, 0, OutcomeDist::bernoulli(0.3));
    const Policy pi = uniform_policy(2, 2, 1);
    const auto [lhs, rhs] = simulation_gap(m, ref, pi);
    CHECK(lhs == doctest::Approx(0.04).epsilon(1e-12));
    CHECK(rhs == doctest::Approx(0.04).epsilon(1e-12));
  }
  SUBCASE("bound holds over random pairs") {
    SplitRng rng(127);
    for (int trial = 0; trial < 100; ++trial) {
      TabularMdp a = random_mdp(rng, 3, 2, 2);
      TabularMdp b = random_mdp(rng, 3, 2, 2);
      b.set_initial(a.initial());  // the bound assumes a shared start
      const Policy pi = random_policy(rng, 3, 2, 2);
      const auto [lhs, rhs] = simulation_gap(a, b, pi);
      CHECK(lhs <= rhs + 1e-9);
    }
  }
}

TEST_CASE("trajectory hellinger distance") {
  SplitRng rng(131);
  SUBCASE("identical models are at distance zero") {
    const TabularMdp mdp = random_mdp(rng, 3, 2, 2);
    const Policy pi = random_policy(rng, 3, 2, 2);
    CHECK(trajectory_hellinger_sq(mdp, mdp, pi) == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("forward recursion matches brute-force enumeration") {
    for (int trial = 0; trial < 20; ++trial) {
      TabularMdp a = random_mdp(rng, 2, 2, 2);
      TabularMdp b = random_mdp(rng, 2, 2, 2);
      b.set_initial(a.initial());
      const Policy pi = random_policy(rng, 2, 2, 2);
      const Model ma = mdp_to_model(a, {pi});
      const Model mb = mdp_to_model(b, {pi});
      const double enumerated = hellinger_sq(ma.outcome(0), mb.outcome(0));
      const double recursed = trajectory_hellinger_sq(a, b, pi);
      CHECK(recursed == doctest::Approx(enumerated).epsilon(1e-9));
    }
  }
  SUBCASE("projected models carry the episode mean") {
    const TabularMdp mdp = random_mdp(rng, 2, 2, 2);
    const Policy pi = random_policy(rng, 2, 2, 2);
    const Model projected = mdp_to_model(mdp, {pi});
    CHECK(projected.mean_reward(0) ==
          doctest::Approx(policy_value(mdp, pi)).epsilon(1e-9));
  }
}

TEST_CASE("validation catches bad shapes") {
  TabularMdp mdp(2, 2, 2);
  mdp.set_initial({0.5, 0.5});
  CHECK_THROWS(mdp.validate());  // kernels are all zero
  for (int s = 0; s < 2; ++s) {
    for (int a = 0; a < 2; ++a) mdp.set_kernel(0, s, a, 0, 1.0);
  }
  mdp.validate();

  SUBCASE("unit-total-reward check") {
    mdp.set_reward(0, 0, 0, OutcomeDist::bernoulli(0.9));
    mdp.set_reward(1, 0, 0, OutcomeDist::bernoulli(0.9));
    CHECK_THROWS(mdp.validate(true));  // achievable sum reaches 2
  }
  SUBCASE("floored copies stay stochastic") {
    const TabularMdp floored = mdp.floored(1e-6);
    floored.validate();
    CHECK(floored.kernel(0, 0, 0, 1) > 0.0);
  }
}
