#include "declab/families.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "declab/divergence.hpp"
#include "declab/errors.hpp"

namespace declab {

namespace {

std::vector<double> random_unit_vector(int dim, SplitRng& rng) {
  std::vector<double> v(dim);
  double norm_sq = 0.0;
  for (double& x : v) {
    x = rng.next_gaussian();
    norm_sq += x * x;
  }
  const double norm = std::sqrt(norm_sq);
  for (double& x : v) x /= norm;
  return v;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) total += a[i] * b[i];
  return total;
}

// ---------------------------------------------------------------------
// Multi-armed bandit family: alternatives bump one arm of a fair coin.

HardFamily make_mab(const FamilyParams& p) {
  if (p.arms < 2) throw InvalidParamsError("mab family needs at least 2 arms");
  if (!(p.delta > 0.0 && p.delta < 0.5)) {
    throw InvalidParamsError("mab family needs delta in (0, 1/2)");
  }
  HardFamily fam;
  fam.kind = FamilyKind::Mab;
  fam.alpha = p.delta;
  fam.beta = 3.0 * p.delta * p.delta;
  fam.delta_slack = 0.0;

  const int arms = p.arms;
  for (int i = 0; i < arms; ++i) {
    std::vector<OutcomeDist> outcomes;
    for (int pi = 0; pi < arms; ++pi) {
      outcomes.push_back(OutcomeDist::bernoulli(0.5 + (pi == i ? p.delta : 0.0)));
    }
    fam.cls.models.emplace_back(std::move(outcomes));
    fam.u.push_back(std::vector<double>(arms, 0.0));
    fam.v.push_back(std::vector<double>(arms, 0.0));
    fam.u.back()[i] = 1.0;
    fam.v.back()[i] = 1.0;
  }
  fam.ref = Model(std::vector<OutcomeDist>(arms, OutcomeDist::bernoulli(0.5)));
  return fam;
}

// Gap variant: the reference is the first alternative, so every member keeps
// gap exactly delta.
HardFamily make_gap_mab(const FamilyParams& p) {
  if (p.arms < 2) throw InvalidParamsError("gap-mab family needs at least 2 arms");
  if (!(p.delta > 0.0 && p.delta < 0.125)) {
    throw InvalidParamsError("gap-mab family needs delta in (0, 1/8)");
  }
  HardFamily fam;
  fam.kind = FamilyKind::GapMab;
  fam.alpha = p.delta;
  // Members differ from the reference by a 2*delta bump on one arm.
  fam.beta = 12.0 * p.delta * p.delta;
  fam.delta_slack = 0.0;

  const int arms = p.arms;
  for (int i = 0; i < arms; ++i) {
    std::vector<OutcomeDist> outcomes;
    for (int pi = 0; pi < arms; ++pi) {
      double mu = 0.5 + (pi == 0 ? p.delta : 0.0);
      if (i > 0 && pi == i) mu += 2.0 * p.delta;
      outcomes.push_back(OutcomeDist::bernoulli(mu));
    }
    fam.cls.models.emplace_back(std::move(outcomes));
    fam.u.push_back(std::vector<double>(arms, 0.0));
    fam.v.push_back(std::vector<double>(arms, 0.0));
    fam.u.back()[i] = 1.0;
    fam.v.back()[i] = 1.0;
  }
  fam.ref = fam.cls.models.front();
  return fam;
}

// ---------------------------------------------------------------------
// Linear bandit family over a finite subset of the unit ball.

HardFamily make_linear(const FamilyParams& p) {
  if (p.dim < 4) throw InvalidParamsError("linear family needs dim >= 4");
  if (!(p.delta > 0.0 && p.delta <= 1.0)) {
    throw InvalidParamsError("linear family needs delta in (0, 1]");
  }
  const int d = p.dim;
  const int extra = p.grid_points > 0 ? p.grid_points : 4 * d;

  // Decision grid: the standard basis plus random unit vectors.
  std::vector<std::vector<double>> grid;
  for (int i = 0; i < d; ++i) {
    std::vector<double> e(d, 0.0);
    e[i] = 1.0;
    grid.push_back(std::move(e));
  }
  SplitRng rng(p.seed ^ 0x11beaULL);
  for (int k = 0; k < extra; ++k) grid.push_back(random_unit_vector(d, rng));

  HardFamily fam;
  fam.kind = FamilyKind::Linear;
  fam.alpha = p.delta;
  fam.beta = 0.75 * p.delta * p.delta;
  fam.delta_slack = 0.0;

  const int n_decisions = static_cast<int>(grid.size());
  for (int i = 0; i < d; ++i) {
    std::vector<OutcomeDist> outcomes;
    std::vector<double> ui(n_decisions), vi(n_decisions);
    for (int pi = 0; pi < n_decisions; ++pi) {
      const double coord = grid[pi][i];
      outcomes.push_back(OutcomeDist::rademacher(p.delta * coord));
      ui[pi] = std::max(0.0, coord);
      vi[pi] = coord * coord;
    }
    fam.cls.models.emplace_back(std::move(outcomes));
    fam.u.push_back(std::move(ui));
    fam.v.push_back(std::move(vi));
  }
  fam.ref =
      Model(std::vector<OutcomeDist>(n_decisions, OutcomeDist::rademacher(0.0)));
  return fam;
}

HardFamily make_gap_linear(const FamilyParams& p) {
  if (p.dim < 2) throw InvalidParamsError("gap-linear family needs dim >= 2");
  if (!(p.delta > 0.0 && p.delta < 0.25)) {
    throw InvalidParamsError("gap-linear family needs delta in (0, 1/4)");
  }
  const int d = p.dim;
  HardFamily fam;
  fam.kind = FamilyKind::GapLinear;
  fam.alpha = p.delta;
  fam.beta = 3.0 * p.delta * p.delta;
  fam.delta_slack = 0.0;

  // Decisions are exactly the basis vectors; theta_i = delta e_1 + 2 delta e_i.
  for (int i = 0; i < d; ++i) {
    std::vector<OutcomeDist> outcomes;
    std::vector<double> ui(d, 0.0), vi(d, 0.0);
    for (int pi = 0; pi < d; ++pi) {
      double mean = pi == 0 ? p.delta : 0.0;
      if (i > 0 && pi == i) mean += 2.0 * p.delta;
      outcomes.push_back(OutcomeDist::rademacher(mean));
    }
    ui[i] = 1.0;
    vi[i] = 1.0;
    fam.cls.models.emplace_back(std::move(outcomes));
    fam.u.push_back(std::move(ui));
    fam.v.push_back(std::move(vi));
  }
  fam.ref = fam.cls.models.front();
  return fam;
}

// ---------------------------------------------------------------------
// Lipschitz bandit on a one-dimensional grid: bump functions around a
// 2eps-separated packing of grid points.

HardFamily make_lipschitz(const FamilyParams& p) {
  if (!(p.eps > 0.0 && p.eps <= 0.2)) {
    throw InvalidParamsError("lipschitz family needs eps in (0, 0.2]");
  }
  const int grid_n = p.grid_points > 0 ? p.grid_points : 101;
  if (grid_n < 2) throw InvalidParamsError("lipschitz family needs a real grid");
  const double step = 1.0 / static_cast<double>(grid_n - 1);
  std::vector<double> grid(grid_n);
  for (int j = 0; j < grid_n; ++j) grid[j] = j * step;

  // Greedy packing: successive grid points strictly more than 2 eps apart.
  std::vector<double> centers{grid[0]};
  for (int j = 1; j < grid_n; ++j) {
    if (grid[j] - centers.back() > 2.0 * p.eps + step / 2.0) {
      centers.push_back(grid[j]);
    }
  }
  if (centers.size() < 2) {
    throw InvalidParamsError("grid too coarse for a 2eps-separated packing");
  }

  HardFamily fam;
  fam.kind = FamilyKind::LipschitzGrid;
  fam.alpha = p.eps;
  fam.beta = 3.0 * p.eps * p.eps;
  fam.delta_slack = 0.0;

  const auto bump = [&](double x, double center) {
    return std::max(0.0, 1.0 - std::abs(x - center) / p.eps);
  };
  for (double center : centers) {
    std::vector<OutcomeDist> outcomes;
    std::vector<double> ui(grid_n), vi(grid_n);
    for (int j = 0; j < grid_n; ++j) {
      outcomes.push_back(OutcomeDist::bernoulli(0.5 + p.eps * bump(grid[j], center)));
      const double in_ball = std::abs(grid[j] - center) <= p.eps ? 1.0 : 0.0;
      ui[j] = in_ball;
      vi[j] = in_ball;
    }
    fam.cls.models.emplace_back(std::move(outcomes));
    fam.u.push_back(std::move(ui));
    fam.v.push_back(std::move(vi));
  }
  fam.ref = Model(std::vector<OutcomeDist>(grid_n, OutcomeDist::bernoulli(0.5)));
  return fam;
}

// ---------------------------------------------------------------------
// ReLU bandit family: rectified caps around orthonormal directions.

HardFamily make_relu(const FamilyParams& p) {
  if (p.dim < 2) throw InvalidParamsError("relu family needs dim >= 2");
  if (!(p.eps > 0.0 && p.eps < 0.29)) {
    // Caps around orthonormal directions stay disjoint for eps < 1 - 1/sqrt(2).
    throw InvalidParamsError("relu family needs eps in (0, 0.29)");
  }
  const int d = p.dim;
  const int extra = p.grid_points > 0 ? p.grid_points : 4 * d;

  std::vector<std::vector<double>> grid;
  for (int i = 0; i < d; ++i) {
    std::vector<double> e(d, 0.0);
    e[i] = 1.0;
    grid.push_back(std::move(e));
  }
  SplitRng rng(p.seed ^ 0x5e1aULL);
  for (int k = 0; k < extra; ++k) grid.push_back(random_unit_vector(d, rng));

  HardFamily fam;
  fam.kind = FamilyKind::ReluGrid;
  fam.alpha = p.eps;
  fam.beta = 0.75 * p.eps * p.eps;
  fam.delta_slack = 0.0;

  const int n_decisions = static_cast<int>(grid.size());
  for (int i = 0; i < d; ++i) {
    std::vector<OutcomeDist> outcomes;
    std::vector<double> ui(n_decisions), vi(n_decisions);
    for (int pi = 0; pi < n_decisions; ++pi) {
      const double f = std::max(0.0, grid[pi][i] - (1.0 - p.eps));
      outcomes.push_back(OutcomeDist::rademacher(f));
      const double in_cap = grid[pi][i] > 1.0 - p.eps ? 1.0 : 0.0;
      ui[pi] = in_cap;
      vi[pi] = in_cap;
    }
    fam.cls.models.emplace_back(std::move(outcomes));
    fam.u.push_back(std::move(ui));
    fam.v.push_back(std::move(vi));
  }
  fam.ref =
      Model(std::vector<OutcomeDist>(n_decisions, OutcomeDist::rademacher(0.0)));
  return fam;
}

// ---------------------------------------------------------------------
// Tree MDP family: binary navigation tree over the first levels, then
// wait-or-play at the leaves; one (step, leaf, play-action) carries a bump.

struct TreeLayout {
  int levels = 0;       // moves needed to reach a leaf
  int states = 0;       // tree nodes + terminal
  int first_leaf = 0;   // leaves occupy [first_leaf, terminal)
  int terminal = 0;
};

TreeLayout tree_layout(int states) {
  TreeLayout layout;
  int leaves = states / 2;
  if (states < 2 || (leaves & (leaves - 1)) != 0 || leaves * 2 != states) {
    throw InvalidParamsError("tree family needs S = 2^(k+1) states");
  }
  layout.levels = 0;
  while ((1 << layout.levels) < leaves) ++layout.levels;
  layout.states = states;
  layout.terminal = states - 1;
  layout.first_leaf = (1 << layout.levels) - 1;
  return layout;
}

TabularMdp make_tree_mdp(const TreeLayout& layout, int horizon, int actions,
                         double delta, const std::array<int, 3>& target) {
  TabularMdp mdp(horizon, layout.states, actions);
  std::vector<double> d1(layout.states, 0.0);
  d1[0] = 1.0;
  mdp.set_initial(std::move(d1));

  for (int h = 0; h + 1 < horizon; ++h) {
    for (int s = 0; s < layout.states; ++s) {
      for (int a = 0; a < actions; ++a) {
        int next;
        if (s == layout.terminal) {
          next = layout.terminal;
        } else if (s < layout.first_leaf) {
          next = 2 * s + 1 + (a % 2);  // internal: navigate left/right
        } else {
          next = a == 0 ? s : layout.terminal;  // leaf: wait or play
        }
        mdp.set_kernel(h, s, a, next, 1.0);
      }
    }
  }
  for (int h = layout.levels; h < horizon; ++h) {
    for (int s = layout.first_leaf; s < layout.terminal; ++s) {
      for (int a = 1; a < actions; ++a) {
        const bool bump = h == target[0] && s == target[1] && a == target[2];
        mdp.set_reward(h, s, a,
                       OutcomeDist::bernoulli(0.5 + (bump ? delta : 0.0)));
      }
    }
  }
  return mdp;
}

HardFamily make_tree(const FamilyParams& p) {
  if (p.actions < 2) throw InvalidParamsError("tree family needs at least 2 actions");
  if (!(p.delta > 0.0 && p.delta < 0.5)) {
    throw InvalidParamsError("tree family needs delta in (0, 1/2)");
  }
  const TreeLayout layout = tree_layout(p.states);
  const int min_horizon = std::max(layout.levels + 1, 2 * layout.levels);
  if (p.horizon < min_horizon) {
    throw InvalidParamsError("tree family needs horizon >= 2 log2(S/2)");
  }

  HardFamily fam;
  fam.kind = FamilyKind::TreeMdp;
  fam.alpha = p.delta;
  fam.beta = 3.0 * p.delta * p.delta;
  fam.delta_slack = 0.0;

  for (int h = layout.levels; h < p.horizon; ++h) {
    for (int s = layout.first_leaf; s < layout.terminal; ++s) {
      for (int a = 1; a < p.actions; ++a) {
        const std::array<int, 3> target{h, s, a};
        fam.targets.push_back(target);
        fam.mdps.push_back(make_tree_mdp(layout, p.horizon, p.actions, p.delta, target));
      }
    }
  }
  if (fam.mdps.size() < 2) {
    throw InvalidParamsError("tree family needs at least 2 alternatives");
  }
  fam.ref_mdp = make_tree_mdp(layout, p.horizon, p.actions, p.delta, {-1, -1, -1});
  return fam;
}

// ---------------------------------------------------------------------
// Linearly realizable Q* family: near-orthogonal directions found by
// rejection sampling; one action per alternative leads onward, everything
// else decays to the terminal state.

std::vector<std::vector<double>> near_orthogonal_set(int dim, int want,
                                                     double delta,
                                                     SplitRng& rng) {
  std::vector<std::vector<double>> kept;
  for (int draws = 0; draws < 100000 && static_cast<int>(kept.size()) < want;
       ++draws) {
    std::vector<double> v = random_unit_vector(dim, rng);
    bool compatible = true;
    for (const auto& other : kept) {
      if (std::abs(dot(v, other)) > delta) {
        compatible = false;
        break;
      }
    }
    if (compatible) kept.push_back(std::move(v));
  }
  return kept;
}

TabularMdp make_linear_qstar_mdp(const std::vector<std::vector<double>>& dirs,
                                 int horizon, double delta, int special) {
  const int m = static_cast<int>(dirs.size());
  const int states = m + 1;
  const int actions = m + 1;
  const int term = m;
  TabularMdp mdp(horizon, states, actions);
  mdp.set_initial([&] {
    std::vector<double> d1(states, 0.0);
    for (int s = 0; s < m; ++s) d1[s] = 1.0 / static_cast<double>(m);
    return d1;
  }());

  const auto onward = [&](int s, int a) { return dot(dirs[s], dirs[a]) + 2.0 * delta; };

  for (int h = 0; h + 1 < horizon; ++h) {
    for (int s = 0; s < states; ++s) {
      for (int a = 0; a < actions; ++a) {
        if (s == term || a == term || a == s || a == special) {
          mdp.set_kernel(h, s, a, term, 1.0);
        } else {
          mdp.set_kernel(h, s, a, a, onward(s, a));
          mdp.set_kernel(h, s, a, term, 1.0 - onward(s, a));
        }
      }
    }
  }
  for (int h = 0; h < horizon; ++h) {
    const bool last = h + 1 == horizon;
    for (int s = 0; s < states; ++s) {
      for (int a = 0; a < actions; ++a) {
        double mean = 0.0;
        if (s != term && a != term && a != s) {
          if (last) {
            // Q* at the last layer: <phi(s,a), v_special>.
            mean = special >= 0 ? onward(s, a) * dot(dirs[a], dirs[special]) : 0.0;
          } else if (special >= 0 && a == special) {
            mean = onward(s, a);
          } else {
            mean = -2.0 * delta * onward(s, a);
          }
        }
        mdp.set_reward(h, s, a, OutcomeDist::rademacher(mean));
      }
    }
  }
  return mdp;
}

HardFamily make_linear_qstar(const FamilyParams& p) {
  if (p.dim < 2) throw InvalidParamsError("linear-qstar family needs dim >= 2");
  if (p.horizon < 2) throw InvalidParamsError("linear-qstar family needs horizon >= 2");
  const double delta = p.delta > 0.0 ? p.delta : 1.0 / 6.0;
  if (!(delta <= 1.0 / 6.0)) {
    throw InvalidParamsError("linear-qstar family needs delta <= 1/6");
  }

  const int want = std::max(
      4, static_cast<int>(std::ceil(std::exp(delta * delta * p.dim / 8.0))));
  SplitRng rng(p.seed ^ 0x9a57ULL);
  const auto dirs = near_orthogonal_set(p.dim, want, delta, rng);
  if (static_cast<int>(dirs.size()) < 4) {
    throw InvalidParamsError("could not sample 4 near-orthogonal directions");
  }

  HardFamily fam;
  fam.kind = FamilyKind::LinearQstar;
  fam.alpha = delta / 2.0;
  fam.beta = 22.0 * delta;
  fam.delta_slack = std::pow(3.0 * delta, p.horizon + 1);
  for (int a = 0; a < static_cast<int>(dirs.size()); ++a) {
    fam.targets.push_back({-1, -1, a});
    fam.mdps.push_back(make_linear_qstar_mdp(dirs, p.horizon, delta, a));
  }
  fam.ref_mdp = make_linear_qstar_mdp(dirs, p.horizon, delta, -1);
  return fam;
}

}  // namespace

double HardFamily::u_weight(int alternative, const Policy& policy) const {
  const OccupancyMeasure occ = occupancy(*ref_mdp, policy);
  if (kind == FamilyKind::TreeMdp) {
    const auto& t = targets[alternative];
    return occ.at(t[0], t[1], t[2]);
  }
  // LinearQstar: P(s_1 = a* or a_1 = a*) under the reference.
  const int special = targets[alternative][2];
  double mass = ref_mdp->initial()[special];
  for (int s = 0; s < ref_mdp->states(); ++s) {
    if (s == special) continue;
    mass += occ.at(0, s, special);
  }
  return mass;
}

double HardFamily::v_weight(int alternative, const Policy& policy) const {
  const OccupancyMeasure occ = occupancy(*ref_mdp, policy);
  if (kind == FamilyKind::TreeMdp) {
    const auto& t = targets[alternative];
    return occ.at(t[0], t[1], t[2]);
  }
  // LinearQstar: half the expected visits of the special action outside the
  // terminal state.
  const int special = targets[alternative][2];
  const int term = ref_mdp->states() - 1;
  double mass = 0.0;
  for (int h = 0; h < ref_mdp->horizon(); ++h) {
    for (int s = 0; s < term; ++s) mass += occ.at(h, s, special);
  }
  return 0.5 * mass;
}

HardFamily make_family(const FamilyParams& params) {
  switch (params.kind) {
    case FamilyKind::Mab: return make_mab(params);
    case FamilyKind::Linear: return make_linear(params);
    case FamilyKind::LipschitzGrid: return make_lipschitz(params);
    case FamilyKind::ReluGrid: return make_relu(params);
    case FamilyKind::GapMab: return make_gap_mab(params);
    case FamilyKind::GapLinear: return make_gap_linear(params);
    case FamilyKind::TreeMdp: return make_tree(params);
    case FamilyKind::LinearQstar: return make_linear_qstar(params);
  }
  throw InvalidParamsError("unknown family kind");
}

namespace {

Policy random_policy(int horizon, int states, int actions, SplitRng& rng) {
  Policy pi(horizon, states, actions);
  for (int h = 0; h < horizon; ++h) {
    for (int s = 0; s < states; ++s) {
      double total = 0.0;
      for (int a = 0; a < actions; ++a) {
        const double mass = -std::log(1.0 - rng.next_double());
        pi.at(h, s, a) = mass;
        total += mass;
      }
      for (int a = 0; a < actions; ++a) pi.at(h, s, a) /= total;
    }
  }
  return pi;
}

// Policy grid for MDP families: every member's optimal policy, all
// deterministic policies when the count is small, plus random draws.
std::vector<Policy> policy_grid(const HardFamily& fam, int samples,
                                std::uint64_t seed) {
  const TabularMdp& ref = *fam.ref_mdp;
  const int horizon = ref.horizon(), states = ref.states(), actions = ref.actions();
  std::vector<Policy> grid;
  grid.push_back(value_iteration(ref).greedy);
  for (const TabularMdp& mdp : fam.mdps) {
    grid.push_back(value_iteration(mdp).greedy);
  }

  const double det_count =
      std::pow(static_cast<double>(actions), static_cast<double>(states) * horizon);
  if (det_count <= 4096.0) {
    const long total = static_cast<long>(det_count);
    for (long code = 0; code < total; ++code) {
      Policy pi(horizon, states, actions);
      long rest = code;
      for (int h = 0; h < horizon; ++h) {
        for (int s = 0; s < states; ++s) {
          pi.at(h, s, static_cast<int>(rest % actions)) = 1.0;
          rest /= actions;
        }
      }
      grid.push_back(std::move(pi));
    }
  }

  SplitRng rng(seed ^ 0xfa317ULL);
  for (int k = 0; k < samples; ++k) {
    grid.push_back(random_policy(horizon, states, actions, rng));
  }
  return grid;
}

}  // namespace

FamilyReport verify_family(const HardFamily& family, int policy_samples,
                           std::uint64_t seed) {
  constexpr double kTol = 1e-9;
  FamilyReport report;
  report.worst_regret_slack = std::numeric_limits<double>::infinity();
  report.worst_info_slack = std::numeric_limits<double>::infinity();
  report.worst_u_slack = std::numeric_limits<double>::infinity();
  report.worst_v_slack = std::numeric_limits<double>::infinity();

  const int n = family.num_alternatives();
  if (!family.is_mdp()) {
    const int decisions = family.cls.num_decisions();
    report.checked_points = decisions;
    for (int pi = 0; pi < decisions; ++pi) {
      double u_total = 0.0, v_total = 0.0;
      for (int i = 0; i < n; ++i) {
        const Model& m = family.cls.models[i];
        const double regret_slack =
            m.gap(pi) - family.alpha * (1.0 - family.u[i][pi]);
        const double info_slack =
            family.beta * family.v[i][pi] + family.delta_slack -
            hellinger_sq(m.outcome(pi), family.ref->outcome(pi));
        report.worst_regret_slack = std::min(report.worst_regret_slack, regret_slack);
        report.worst_info_slack = std::min(report.worst_info_slack, info_slack);
        u_total += family.u[i][pi];
        v_total += family.v[i][pi];
      }
      report.worst_u_slack = std::min(report.worst_u_slack, n / 2.0 - u_total);
      report.worst_v_slack = std::min(report.worst_v_slack, 1.0 - v_total);
    }
  } else {
    report.sampled = true;
    const std::vector<Policy> grid = policy_grid(family, policy_samples, seed);
    report.checked_points = static_cast<int>(grid.size());
    std::vector<double> member_opt(n);
    for (int i = 0; i < n; ++i) {
      member_opt[i] = value_iteration(family.mdps[i]).value;
    }
    for (const Policy& pi : grid) {
      double u_total = 0.0, v_total = 0.0;
      for (int i = 0; i < n; ++i) {
        const double u = family.u_weight(i, pi);
        const double v = family.v_weight(i, pi);
        const double regret_slack = member_opt[i] -
                                    policy_value(family.mdps[i], pi) -
                                    family.alpha * (1.0 - u);
        const double info_slack =
            family.beta * v + family.delta_slack -
            trajectory_hellinger_sq(family.mdps[i], *family.ref_mdp, pi);
        report.worst_regret_slack = std::min(report.worst_regret_slack, regret_slack);
        report.worst_info_slack = std::min(report.worst_info_slack, info_slack);
        u_total += u;
        v_total += v;
      }
      report.worst_u_slack = std::min(report.worst_u_slack, n / 2.0 - u_total);
      report.worst_v_slack = std::min(report.worst_v_slack, 1.0 - v_total);
    }
  }

  report.regret_ok = report.worst_regret_slack >= -kTol;
  report.info_ok = report.worst_info_slack >= -kTol;
  report.u_budget_ok = report.worst_u_slack >= -kTol;
  report.v_budget_ok = report.worst_v_slack >= -kTol;
  report.passes = report.regret_ok && report.info_ok && report.u_budget_ok &&
                  report.v_budget_ok;
  return report;
}

double family_lower_bound(const HardFamily& family, double gamma) {
  const double n = static_cast<double>(family.num_alternatives());
  return family.alpha / 2.0 -
         gamma * (family.beta / n + family.delta_slack);
}

ModelClass family_to_model_class(const HardFamily& family,
                                 const std::vector<Policy>& policies) {
  if (!family.is_mdp()) return family.cls;
  ModelClass cls;
  for (const TabularMdp& mdp : family.mdps) {
    cls.models.push_back(mdp_to_model(mdp, policies));
  }
  return cls;
}

}  // namespace declab
