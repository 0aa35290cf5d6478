#include "declab/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "declab/divergence.hpp"
#include "declab/errors.hpp"

namespace declab {

namespace {
constexpr double kSimplexTol = 1e-12;
}

TabularMdp::TabularMdp(int horizon, int states, int actions)
    : horizon_(horizon), states_(states), actions_(actions) {
  if (horizon < 1 || states < 1 || actions < 1) {
    throw InvalidParamsError("MDP needs positive horizon, states, actions");
  }
  kernels_.assign(static_cast<std::size_t>(std::max(0, horizon - 1)) * states *
                      actions * states,
                  0.0);
  rewards_.assign(static_cast<std::size_t>(horizon) * states * actions,
                  OutcomeDist::point_mass(0.0));
  initial_.assign(states, 0.0);
  initial_[0] = 1.0;
}

void TabularMdp::validate(bool require_unit_total_reward) const {
  double init_total = 0.0;
  for (double p : initial_) {
    if (!(p >= 0.0)) throw InvalidParamsError("initial distribution has negative mass");
    init_total += p;
  }
  if (std::abs(init_total - 1.0) > kSimplexTol) {
    throw InvalidParamsError("initial distribution must sum to 1 within 1e-12");
  }
  for (int h = 0; h + 1 < horizon_; ++h) {
    for (int s = 0; s < states_; ++s) {
      for (int a = 0; a < actions_; ++a) {
        double row = 0.0;
        for (int next = 0; next < states_; ++next) {
          const double p = kernel(h, s, a, next);
          if (!(p >= 0.0)) throw InvalidParamsError("kernel has negative mass");
          row += p;
        }
        if (std::abs(row - 1.0) > kSimplexTol) {
          throw InvalidParamsError("kernel row must sum to 1 within 1e-12");
        }
      }
    }
  }
  if (require_unit_total_reward) {
    // Backward pass over the per-(h,s,a) maximum supported reward.
    auto max_support = [](const OutcomeDist& d) {
      switch (d.kind()) {
        case DistKind::Bernoulli: return 1.0;
        case DistKind::Rademacher: return 1.0;
        case DistKind::PointMass: return d.mu();
        case DistKind::Categorical: {
          double best = d.support().front().reward;
          for (const auto& atom : d.support()) best = std::max(best, atom.reward);
          return best;
        }
        case DistKind::Gaussian:
          throw InvalidParamsError("gaussian rewards have unbounded support");
      }
      return 0.0;
    };
    std::vector<double> v(states_, 0.0);
    for (int h = horizon_ - 1; h >= 0; --h) {
      std::vector<double> v_prev(states_, 0.0);
      for (int s = 0; s < states_; ++s) {
        double best = -1e300;
        for (int a = 0; a < actions_; ++a) {
          double q = max_support(reward(h, s, a));
          if (h + 1 < horizon_) {
            double cont = -1e300;
            // max over reachable next states
            for (int next = 0; next < states_; ++next) {
              if (kernel(h, s, a, next) > 0.0) cont = std::max(cont, v[next]);
            }
            q += cont == -1e300 ? 0.0 : cont;
          }
          best = std::max(best, q);
        }
        v_prev[s] = best;
      }
      v = std::move(v_prev);
    }
    double reachable = 0.0;
    for (int s = 0; s < states_; ++s) {
      if (initial_[s] > 0.0) reachable = std::max(reachable, v[s]);
    }
    if (reachable > 1.0 + 1e-9) {
      throw InvalidParamsError("maximum achievable reward sum exceeds 1");
    }
  }
}

TabularMdp TabularMdp::floored(double delta) const {
  TabularMdp out = *this;
  const double unif = 1.0 / static_cast<double>(states_);
  for (double& p : out.kernels_) p = (1.0 - delta) * p;
  for (int h = 0; h + 1 < horizon_; ++h) {
    for (int s = 0; s < states_; ++s) {
      for (int a = 0; a < actions_; ++a) {
        for (int next = 0; next < states_; ++next) {
          out.kernels_[out.kernel_index(h, s, a, next)] += delta * unif;
        }
      }
    }
  }
  for (double& p : out.initial_) p = (1.0 - delta) * p + delta * unif;
  return out;
}

Policy uniform_policy(int horizon, int states, int actions) {
  Policy pi(horizon, states, actions);
  const double u = 1.0 / static_cast<double>(actions);
  std::fill(pi.probs.begin(), pi.probs.end(), u);
  return pi;
}

PlanResult value_iteration(const TabularMdp& mdp) {
  const int horizon = mdp.horizon(), states = mdp.states(), actions = mdp.actions();
  PlanResult plan;
  plan.q.assign(static_cast<std::size_t>(horizon) * states * actions, 0.0);
  plan.v.assign(static_cast<std::size_t>(horizon) * states, 0.0);
  plan.greedy = Policy(horizon, states, actions);

  for (int h = horizon - 1; h >= 0; --h) {
    for (int s = 0; s < states; ++s) {
      int best_action = 0;
      double best_q = -1e300;
      for (int a = 0; a < actions; ++a) {
        double q = mdp.reward(h, s, a).mean();
        if (h + 1 < horizon) {
          for (int next = 0; next < states; ++next) {
            const double p = mdp.kernel(h, s, a, next);
            if (p > 0.0) q += p * plan.v[(h + 1) * states + next];
          }
        }
        plan.q[mdp.sa_index(h, s, a)] = q;
        if (q > best_q) {
          best_q = q;
          best_action = a;
        }
      }
      plan.v[h * states + s] = best_q;
      plan.greedy.at(h, s, best_action) = 1.0;
    }
  }
  plan.value = 0.0;
  for (int s = 0; s < states; ++s) {
    plan.value += mdp.initial()[s] * plan.v[s];
  }
  return plan;
}

OccupancyMeasure occupancy(const TabularMdp& mdp, const Policy& policy) {
  const int horizon = mdp.horizon(), states = mdp.states(), actions = mdp.actions();
  OccupancyMeasure occ;
  occ.horizon = horizon;
  occ.states = states;
  occ.actions = actions;
  occ.visits.assign(static_cast<std::size_t>(horizon) * states * actions, 0.0);

  std::vector<double> state_mass = mdp.initial();
  for (int h = 0; h < horizon; ++h) {
    for (int s = 0; s < states; ++s) {
      const double mass = state_mass[s];
      if (mass == 0.0) continue;
      for (int a = 0; a < actions; ++a) {
        occ.at(h, s, a) = mass * policy.at(h, s, a);
      }
    }
    if (h + 1 < horizon) {
      std::vector<double> next_mass(states, 0.0);
      for (int s = 0; s < states; ++s) {
        for (int a = 0; a < actions; ++a) {
          const double d = occ.at(h, s, a);
          if (d == 0.0) continue;
          for (int next = 0; next < states; ++next) {
            next_mass[next] += d * mdp.kernel(h, s, a, next);
          }
        }
      }
      state_mass = std::move(next_mass);
    }
  }
  return occ;
}

double policy_value(const TabularMdp& mdp, const Policy& policy) {
  const OccupancyMeasure occ = occupancy(mdp, policy);
  double value = 0.0;
  for (int h = 0; h < mdp.horizon(); ++h) {
    for (int s = 0; s < mdp.states(); ++s) {
      for (int a = 0; a < mdp.actions(); ++a) {
        const double d = occ.at(h, s, a);
        if (d > 0.0) value += d * mdp.reward(h, s, a).mean();
      }
    }
  }
  return value;
}

double flow_residual(const TabularMdp& mdp, const OccupancyMeasure& occ) {
  const int states = mdp.states(), actions = mdp.actions();
  double worst = 0.0;
  for (int s = 0; s < states; ++s) {
    double mass = 0.0;
    for (int a = 0; a < actions; ++a) mass += occ.at(0, s, a);
    worst = std::max(worst, std::abs(mass - mdp.initial()[s]));
  }
  for (int h = 0; h + 1 < mdp.horizon(); ++h) {
    for (int next = 0; next < states; ++next) {
      double inflow = 0.0;
      for (int s = 0; s < states; ++s) {
        for (int a = 0; a < actions; ++a) {
          inflow += occ.at(h, s, a) * mdp.kernel(h, s, a, next);
        }
      }
      double outflow = 0.0;
      for (int a = 0; a < actions; ++a) outflow += occ.at(h + 1, next, a);
      worst = std::max(worst, std::abs(inflow - outflow));
    }
  }
  return worst;
}

Trajectory simulate(const TabularMdp& mdp, const Policy& policy, SplitRng& rng) {
  Trajectory traj;
  const int horizon = mdp.horizon();
  traj.states_visited.reserve(horizon);
  traj.actions_taken.reserve(horizon);
  traj.rewards.reserve(horizon);

  auto draw = [&rng](int count, auto&& prob_at) {
    const double u = rng.next_double();
    double cum = 0.0;
    for (int i = 0; i < count; ++i) {
      cum += prob_at(i);
      if (u < cum) return i;
    }
    return count - 1;
  };

  int s = draw(mdp.states(), [&](int i) { return mdp.initial()[i]; });
  for (int h = 0; h < horizon; ++h) {
    const int a = draw(mdp.actions(), [&](int i) { return policy.at(h, s, i); });
    const Sample obs = mdp.reward(h, s, a).sample(rng);
    traj.states_visited.push_back(s);
    traj.actions_taken.push_back(a);
    traj.rewards.push_back(obs.reward);
    if (h + 1 < horizon) {
      s = draw(mdp.states(), [&](int i) { return mdp.kernel(h, s, a, i); });
    }
  }
  return traj;
}

Policy policy_from_occupancy(const OccupancyMeasure& occ) {
  Policy pi(occ.horizon, occ.states, occ.actions);
  for (int h = 0; h < occ.horizon; ++h) {
    for (int s = 0; s < occ.states; ++s) {
      double mass = 0.0;
      for (int a = 0; a < occ.actions; ++a) mass += occ.at(h, s, a);
      if (mass > 0.0) {
        for (int a = 0; a < occ.actions; ++a) pi.at(h, s, a) = occ.at(h, s, a) / mass;
      } else {
        const double u = 1.0 / static_cast<double>(occ.actions);
        for (int a = 0; a < occ.actions; ++a) pi.at(h, s, a) = u;
      }
    }
  }
  return pi;
}

std::pair<double, double> simulation_gap(const TabularMdp& m,
                                         const TabularMdp& ref,
                                         const Policy& policy) {
  const double lhs = std::abs(policy_value(m, policy) - policy_value(ref, policy));
  const OccupancyMeasure occ = occupancy(ref, policy);
  double rhs = 0.0;
  for (int h = 0; h < ref.horizon(); ++h) {
    for (int s = 0; s < ref.states(); ++s) {
      for (int a = 0; a < ref.actions(); ++a) {
        const double d = occ.at(h, s, a);
        if (d == 0.0) continue;
        double tv_kernel = 0.0;
        if (h + 1 < ref.horizon()) {
          for (int next = 0; next < ref.states(); ++next) {
            tv_kernel += std::abs(m.kernel(h, s, a, next) - ref.kernel(h, s, a, next));
          }
          tv_kernel *= 0.5;
        }
        const double tv_reward =
            total_variation(m.reward(h, s, a), ref.reward(h, s, a));
        rhs += d * (tv_kernel + tv_reward);
      }
    }
  }
  return {lhs, rhs};
}

double trajectory_hellinger_sq(const TabularMdp& a, const TabularMdp& b,
                               const Policy& policy) {
  const int horizon = a.horizon(), states = a.states(), actions = a.actions();
  // Forward recursion over the Bhattacharyya mass: policy factors are shared,
  // rewards contribute their affinity, transitions contribute
  // sqrt(P_a * P_b). The divergence is 2 * (1 - total affinity).
  std::vector<double> mass(states);
  for (int s = 0; s < states; ++s) {
    mass[s] = std::sqrt(a.initial()[s] * b.initial()[s]);
  }
  for (int h = 0; h < horizon; ++h) {
    std::vector<double> next_mass(states, 0.0);
    double terminal = 0.0;
    for (int s = 0; s < states; ++s) {
      if (mass[s] == 0.0) continue;
      for (int act = 0; act < actions; ++act) {
        const double p_act = policy.at(h, s, act);
        if (p_act == 0.0) continue;
        const double reward_affinity =
            1.0 - 0.5 * hellinger_sq(a.reward(h, s, act), b.reward(h, s, act));
        const double flow = mass[s] * p_act * reward_affinity;
        if (flow == 0.0) continue;
        if (h + 1 < horizon) {
          for (int next = 0; next < states; ++next) {
            const double pq = a.kernel(h, s, act, next) * b.kernel(h, s, act, next);
            if (pq > 0.0) next_mass[next] += flow * std::sqrt(pq);
          }
        } else {
          terminal += flow;
        }
      }
    }
    if (h + 1 < horizon) {
      mass = std::move(next_mass);
    } else {
      return std::max(0.0, 2.0 * (1.0 - terminal));
    }
  }
  return 0.0;
}

namespace {

// Finite reward support as categorical atoms; throws for Gaussian rewards.
std::vector<std::pair<double, double>> reward_atoms(const OutcomeDist& d) {
  switch (d.kind()) {
    case DistKind::Bernoulli:
      return {{0.0, 1.0 - d.mu()}, {1.0, d.mu()}};
    case DistKind::Rademacher:
      return {{-1.0, 0.5 * (1.0 - d.mu())}, {1.0, 0.5 * (1.0 + d.mu())}};
    case DistKind::PointMass:
      return {{d.mu(), 1.0}};
    case DistKind::Categorical: {
      std::vector<std::pair<double, double>> atoms;
      for (std::size_t i = 0; i < d.probs().size(); ++i) {
        atoms.push_back({d.support()[i].reward, d.probs()[i]});
      }
      return atoms;
    }
    case DistKind::Gaussian:
      throw InvalidParamsError("trajectory enumeration needs finite reward support");
  }
  return {};
}

struct TrajectoryEnumerator {
  const TabularMdp& mdp;
  const Policy& policy;
  std::vector<CategoricalAtom> atoms;
  std::vector<double> probs;
  std::string label;

  // Depth-first over (state, action, reward atom) triples. Zero-probability
  // branches are enumerated too so every model over the same shapes yields
  // the identical support list.
  void walk(int h, int s, double prob, double reward_sum) {
    const std::size_t label_len = label.size();
    for (int a = 0; a < mdp.actions(); ++a) {
      const double p_a = prob * policy.at(h, s, a);
      const auto r_atoms = reward_atoms(mdp.reward(h, s, a));
      for (std::size_t k = 0; k < r_atoms.size(); ++k) {
        label.resize(label_len);
        label += std::to_string(s);
        label += ':';
        label += std::to_string(a);
        label += ':';
        label += std::to_string(k);
        label += '|';
        const double p_r = p_a * r_atoms[k].second;
        const double next_reward = reward_sum + r_atoms[k].first;
        if (h + 1 == mdp.horizon()) {
          atoms.push_back({next_reward, label});
          probs.push_back(p_r);
        } else {
          const std::size_t inner_len = label.size();
          for (int next = 0; next < mdp.states(); ++next) {
            label.resize(inner_len);
            walk(h + 1, next, p_r * mdp.kernel(h, s, a, next), next_reward);
          }
        }
      }
    }
    label.resize(label_len);
  }
};

}  // namespace

Model mdp_to_model(const TabularMdp& mdp, const std::vector<Policy>& policies) {
  std::vector<OutcomeDist> outcomes;
  outcomes.reserve(policies.size());
  for (const Policy& policy : policies) {
    TrajectoryEnumerator out{mdp, policy, {}, {}, {}};
    // Seed the walk across initial states so atom order is shape-canonical.
    for (int s = 0; s < mdp.states(); ++s) {
      out.label = std::string();
      out.walk(0, s, mdp.initial()[s], 0.0);
    }
    if (out.atoms.size() > 2000000) {
      throw InvalidParamsError("trajectory space too large to enumerate");
    }
    double total = 0.0;
    for (double p : out.probs) total += p;
    for (double& p : out.probs) p /= total;
    outcomes.push_back(
        OutcomeDist::categorical(std::move(out.atoms), std::move(out.probs)));
  }
  return Model(std::move(outcomes));
}

}  // namespace declab
