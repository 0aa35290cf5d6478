#include "declab/pcigw.hpp"

#include <algorithm>
#include <cmath>

#include "declab/errors.hpp"
#include "declab/simplex_lp.hpp"

namespace declab {

namespace {

constexpr double kFloorDelta = 1e-6;

Policy round_policy(Policy pi) {
  for (double& p : pi.probs) p = std::round(p * 1e9) / 1e9;
  return pi;
}

bool same_policy(const Policy& a, const Policy& b) {
  return a.probs == b.probs;
}

}  // namespace

LfpResult lfp_policy(const TabularMdp& ref, int h, int s, int a, double eta,
                     bool delta_floor) {
  if (!(eta > 0.0)) throw InvalidParamsError("eta must be positive");
  const TabularMdp& lp_mdp_ref = ref;
  TabularMdp floored_copy = delta_floor ? ref.floored(kFloorDelta) : ref;
  const TabularMdp& mdp = delta_floor ? floored_copy : lp_mdp_ref;

  const int horizon = mdp.horizon(), states = mdp.states(), actions = mdp.actions();
  const int hsa = horizon * states * actions;
  const double scale = 2.0 * static_cast<double>(horizon) * states * actions;
  const double f_opt = value_iteration(mdp).value;

  // Charnes-Cooper variables: w (one per (h,s,a)) and t, with
  //   (scale + eta f_opt) t - eta <w, rbar> = 1
  //   sum_a w_{0,s,a} = t d1(s)
  //   sum_{s,a} w_{h,s,a} P_h(s'|s,a) = sum_a w_{h+1,s',a}.
  // Bounds w,t <= 1 are implied at feasible points and omitted.
  const int n_vars = hsa + 1;
  const int t_var = hsa;
  const int n_rows = 1 + states + (horizon - 1) * states;
  DenseMatrix lp(n_rows, n_vars);
  std::vector<double> rhs(n_rows, 0.0), cost(n_vars, 0.0);

  int row = 0;
  lp.at(row, t_var) = scale + eta * f_opt;
  for (int hh = 0; hh < horizon; ++hh) {
    for (int ss = 0; ss < states; ++ss) {
      for (int aa = 0; aa < actions; ++aa) {
        lp.at(row, mdp.sa_index(hh, ss, aa)) = -eta * mdp.reward(hh, ss, aa).mean();
      }
    }
  }
  rhs[row] = 1.0;
  ++row;

  for (int ss = 0; ss < states; ++ss, ++row) {
    for (int aa = 0; aa < actions; ++aa) lp.at(row, mdp.sa_index(0, ss, aa)) = 1.0;
    lp.at(row, t_var) = -mdp.initial()[ss];
  }
  for (int hh = 0; hh + 1 < horizon; ++hh) {
    for (int next = 0; next < states; ++next, ++row) {
      for (int ss = 0; ss < states; ++ss) {
        for (int aa = 0; aa < actions; ++aa) {
          lp.at(row, mdp.sa_index(hh, ss, aa)) += mdp.kernel(hh, ss, aa, next);
        }
      }
      for (int aa = 0; aa < actions; ++aa) {
        lp.at(row, mdp.sa_index(hh + 1, next, aa)) -= 1.0;
      }
    }
  }

  // Maximize w at the target triple (simplex core minimizes).
  cost[mdp.sa_index(h, s, a)] = -1.0;

  // Dependent flow rows are removed up front.
  const std::vector<int> keep = independent_rows(lp, rhs);
  DenseMatrix reduced(static_cast<int>(keep.size()), n_vars);
  std::vector<double> reduced_rhs(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    for (int j = 0; j < n_vars; ++j) reduced.at(static_cast<int>(i), j) = lp.at(keep[i], j);
    reduced_rhs[i] = rhs[keep[i]];
  }

  const LpResult sol = solve_equality_lp(reduced, reduced_rhs, cost);
  const double t_val = sol.x[t_var];
  if (!(t_val > 0.0)) {
    throw NumericFailureError("Charnes-Cooper scale variable vanished");
  }

  LfpResult result;
  result.occupancy.horizon = horizon;
  result.occupancy.states = states;
  result.occupancy.actions = actions;
  result.occupancy.visits.assign(hsa, 0.0);
  for (int i = 0; i < hsa; ++i) result.occupancy.visits[i] = sol.x[i] / t_val;
  result.policy = policy_from_occupancy(result.occupancy);

  // Report the ratio of the recovered policy on the unfloored model.
  const OccupancyMeasure direct = occupancy(ref, result.policy);
  const double gap = value_iteration(ref).value - policy_value(ref, result.policy);
  result.ratio = direct.at(h, s, a) / (scale + eta * gap);
  return result;
}

PolicyCover pcigw(const TabularMdp& ref, double eta, bool delta_floor) {
  if (!(eta > 0.0)) throw InvalidParamsError("eta must be positive");
  ref.validate();
  const int horizon = ref.horizon(), states = ref.states(), actions = ref.actions();
  const PlanResult plan = value_iteration(ref);

  PolicyCover cover;
  cover.reference_value = plan.value;

  auto add_policy = [&cover](Policy pi) {
    Policy rounded = round_policy(std::move(pi));
    for (const Policy& existing : cover.policies) {
      if (same_policy(existing, rounded)) return;
    }
    cover.policies.push_back(std::move(rounded));
  };

  add_policy(plan.greedy);
  for (int h = 0; h < horizon; ++h) {
    for (int s = 0; s < states; ++s) {
      for (int a = 0; a < actions; ++a) {
        add_policy(lfp_policy(ref, h, s, a, eta, delta_floor).policy);
      }
    }
  }

  cover.gaps.reserve(cover.policies.size());
  for (const Policy& pi : cover.policies) {
    cover.gaps.push_back(std::max(0.0, plan.value - policy_value(ref, pi)));
  }

  // Normalizer: sum of 1/(lambda + eta gap) is strictly decreasing, equals 1
  // somewhere in [1, 2HSA] because the greedy policy contributes 1/lambda.
  const double hi_cap = 2.0 * static_cast<double>(horizon) * states * actions;
  const auto mass = [&](double lambda) {
    double total = 0.0;
    for (double gap : cover.gaps) total += 1.0 / (lambda + eta * gap);
    return total;
  };
  double lo = 1.0, hi = hi_cap;
  for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (mass(mid) >= 1.0 ? lo : hi) = mid;
  }
  cover.lambda = 0.5 * (lo + hi);

  cover.weights.resize(cover.policies.size());
  double total = 0.0;
  for (std::size_t i = 0; i < cover.weights.size(); ++i) {
    cover.weights[i] = 1.0 / (cover.lambda + eta * cover.gaps[i]);
    total += cover.weights[i];
  }
  for (double& w : cover.weights) w /= total;
  return cover;
}

double cover_objective(const PolicyCover& cover, const TabularMdp& test_model,
                       const TabularMdp& ref, double gamma) {
  const double f_opt = value_iteration(test_model).value;
  double objective = 0.0;
  for (std::size_t i = 0; i < cover.policies.size(); ++i) {
    const Policy& pi = cover.policies[i];
    const double regret = f_opt - policy_value(test_model, pi);
    const double info = trajectory_hellinger_sq(test_model, ref, pi);
    objective += cover.weights[i] * (regret - gamma * info);
  }
  return objective;
}

}  // namespace declab
