#pragma once

#include <vector>

#include "declab/model.hpp"
#include "declab/outcome_dist.hpp"
#include "declab/rng.hpp"

namespace declab {

/// Finite-horizon MDP with nonstationary kernels and per-(h,s,a) reward
/// distributions. Layers are 0-indexed internally; kernels exist for
/// h = 0..H-2. Rewards should be scaled so the maximum achievable episode
/// total stays in [0,1] (validate enforces this when asked).
class TabularMdp {
 public:
  TabularMdp(int horizon, int states, int actions);

  int horizon() const { return horizon_; }
  int states() const { return states_; }
  int actions() const { return actions_; }

  double kernel(int h, int s, int a, int next) const {
    return kernels_[kernel_index(h, s, a, next)];
  }
  void set_kernel(int h, int s, int a, int next, double p) {
    kernels_[kernel_index(h, s, a, next)] = p;
  }

  const OutcomeDist& reward(int h, int s, int a) const {
    return rewards_[sa_index(h, s, a)];
  }
  void set_reward(int h, int s, int a, OutcomeDist dist) {
    rewards_[sa_index(h, s, a)] = std::move(dist);
  }

  const std::vector<double>& initial() const { return initial_; }
  void set_initial(std::vector<double> d1) { initial_ = std::move(d1); }

  /// Kernel rows and d1 on the simplex within 1e-12; optionally checks that
  /// the maximum achievable sum of rewards is at most 1.
  void validate(bool require_unit_total_reward = false) const;

  /// Returns a copy with kernels and d1 mixed toward uniform at rate delta.
  TabularMdp floored(double delta) const;

  int sa_index(int h, int s, int a) const {
    return (h * states_ + s) * actions_ + a;
  }

 private:
  int kernel_index(int h, int s, int a, int next) const {
    return ((h * states_ + s) * actions_ + a) * states_ + next;
  }

  int horizon_, states_, actions_;
  std::vector<double> kernels_;
  std::vector<OutcomeDist> rewards_;
  std::vector<double> initial_;
};

/// Randomized nonstationary policy: rows pi_h(.|s) on the simplex.
struct Policy {
  int horizon = 0, states = 0, actions = 0;
  std::vector<double> probs;  // flat (h, s, a)

  Policy() = default;
  Policy(int h, int s, int a)
      : horizon(h), states(s), actions(a),
        probs(static_cast<std::size_t>(h) * s * a, 0.0) {}

  double at(int h, int s, int a) const {
    return probs[(static_cast<std::size_t>(h) * states + s) * actions + a];
  }
  double& at(int h, int s, int a) {
    return probs[(static_cast<std::size_t>(h) * states + s) * actions + a];
  }
};

Policy uniform_policy(int horizon, int states, int actions);

/// Per-layer state-action visitation probabilities.
struct OccupancyMeasure {
  int horizon = 0, states = 0, actions = 0;
  std::vector<double> visits;  // flat (h, s, a)

  double at(int h, int s, int a) const {
    return visits[(static_cast<std::size_t>(h) * states + s) * actions + a];
  }
  double& at(int h, int s, int a) {
    return visits[(static_cast<std::size_t>(h) * states + s) * actions + a];
  }
};

struct PlanResult {
  std::vector<double> q;  // flat (h, s, a)
  std::vector<double> v;  // flat (h, s)
  Policy greedy;          // least-index ties
  double value = 0.0;     // f_M = E_{d1}[V_1]
};

/// Backward dynamic programming over the mean rewards.
PlanResult value_iteration(const TabularMdp& mdp);

/// Forward recursion from the initial distribution.
OccupancyMeasure occupancy(const TabularMdp& mdp, const Policy& policy);

/// Expected episode reward of the policy.
double policy_value(const TabularMdp& mdp, const Policy& policy);

/// Max violation of the flow-conservation constraints; 0 for exact
/// occupancies.
double flow_residual(const TabularMdp& mdp, const OccupancyMeasure& occ);

struct Trajectory {
  std::vector<int> states_visited;
  std::vector<int> actions_taken;
  std::vector<double> rewards;

  double total_reward() const {
    double total = 0.0;
    for (double r : rewards) total += r;
    return total;
  }
};

/// Episodic rollout, deterministic under the rng stream.
Trajectory simulate(const TabularMdp& mdp, const Policy& policy, SplitRng& rng);

/// Normalizes occupancy rows into a policy; zero-visitation states get the
/// uniform row.
Policy policy_from_occupancy(const OccupancyMeasure& occ);

/// Local simulation bound: returns (lhs, rhs) with
///   lhs = |f_M(pi) - f_ref(pi)|
///   rhs = sum_h E_ref[TV(P) + TV(R)] under the reference occupancy.
std::pair<double, double> simulation_gap(const TabularMdp& m,
                                         const TabularMdp& ref,
                                         const Policy& policy);

/// Exact squared Hellinger distance between the trajectory laws of two MDPs
/// under a shared policy, via a forward affinity recursion. Rewards must
/// have finite support of matching kinds.
double trajectory_hellinger_sq(const TabularMdp& a, const TabularMdp& b,
                               const Policy& policy);

/// Projects MDPs onto a finite policy set: decision pi = policies[i], and
/// the outcome at pi is the categorical distribution over full trajectories
/// (reward coordinate = episode total). All MDPs sharing shapes and reward
/// supports produce index-aligned categorical supports.
Model mdp_to_model(const TabularMdp& mdp, const std::vector<Policy>& policies);

}  // namespace declab
