#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "declab/mdp.hpp"
#include "declab/model.hpp"

namespace declab {

enum class FamilyKind {
  Mab,
  Linear,
  LipschitzGrid,
  ReluGrid,
  GapMab,
  GapLinear,
  TreeMdp,
  LinearQstar
};

struct FamilyParams {
  FamilyKind kind = FamilyKind::Mab;
  int arms = 0;            // Mab / GapMab
  int dim = 0;             // Linear / ReluGrid / GapLinear / LinearQstar
  double delta = 0.0;      // gap parameter
  double eps = 0.0;        // LipschitzGrid / ReluGrid scale
  int horizon = 0;         // TreeMdp / LinearQstar
  int states = 0;          // TreeMdp
  int actions = 0;         // TreeMdp
  int grid_points = 0;     // extra decision-grid points (0 = kind default)
  std::uint64_t seed = 0;  // grid sampling / rejection sampling
};

/// A reference model plus N alternatives with tabulated (bandit kinds) or
/// occupancy-based (MDP kinds) weight functions u_i, v_i, certifying the
/// lower-bound value alpha/2 - gamma (beta/N + delta).
struct HardFamily {
  FamilyKind kind = FamilyKind::Mab;
  double alpha = 0.0;
  double beta = 0.0;
  double delta_slack = 0.0;  // the family's additive information slack

  // Bandit representation: alternatives over a finite decision set.
  ModelClass cls;
  std::optional<Model> ref;
  std::vector<std::vector<double>> u;  // [alternative][decision]
  std::vector<std::vector<double>> v;

  // MDP representation: decisions are policies.
  std::vector<TabularMdp> mdps;
  std::optional<TabularMdp> ref_mdp;
  // TreeMdp: target (h, s, a) per alternative. LinearQstar: target action.
  std::vector<std::array<int, 3>> targets;

  bool is_mdp() const {
    return kind == FamilyKind::TreeMdp || kind == FamilyKind::LinearQstar;
  }
  int num_alternatives() const {
    return is_mdp() ? static_cast<int>(mdps.size()) : cls.num_models();
  }

  double u_weight(int alternative, const Policy& policy) const;
  double v_weight(int alternative, const Policy& policy) const;
};

HardFamily make_family(const FamilyParams& params);

struct FamilyReport {
  bool passes = false;
  bool regret_ok = false;
  bool info_ok = false;
  bool u_budget_ok = false;  // sum_i u_i(pi) <= N/2
  bool v_budget_ok = false;  // sum_i v_i(pi) <= 1
  double worst_regret_slack = 0.0;
  double worst_info_slack = 0.0;
  double worst_u_slack = 0.0;
  double worst_v_slack = 0.0;
  int checked_points = 0;
  bool sampled = false;  // MDP families: policy space checked by sampling
};

/// Checks all four family conditions numerically: exact over the decision
/// grid for bandit kinds; over every member-optimal policy, all
/// deterministic policies (when few), and `policy_samples` random policies
/// for MDP kinds.
FamilyReport verify_family(const HardFamily& family, int policy_samples = 1000,
                           std::uint64_t seed = 1);

/// Closed-form dual lower bound alpha/2 - gamma (beta/N + delta).
double family_lower_bound(const HardFamily& family, double gamma);

/// Projects an MDP family onto a finite policy set so the dual program can
/// run on it (trajectory laws become categorical outcomes).
ModelClass family_to_model_class(const HardFamily& family,
                                 const std::vector<Policy>& policies);

}  // namespace declab
