// Acceptance suite: every release-gating property at its stated tolerance,
// one pass/fail line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "declab/bilinear.hpp"
#include "declab/dec.hpp"
#include "declab/e2d.hpp"
#include "declab/estimation.hpp"
#include "declab/families.hpp"
#include "declab/mdp.hpp"
#include "declab/pcigw.hpp"
#include "declab/rng.hpp"

using namespace declab;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& what,
            const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion,
              what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

Model bernoulli_model(const std::vector<double>& means) {
  std::vector<OutcomeDist> outcomes;
  for (double mu : means) outcomes.push_back(OutcomeDist::bernoulli(mu));
  return Model(std::move(outcomes));
}

ModelClass random_bernoulli_class(SplitRng& rng, int models, int decisions,
                                  double lo = 0.05, double hi = 0.95) {
  ModelClass cls;
  for (int m = 0; m < models; ++m) {
    std::vector<double> means(decisions);
    for (double& mu : means) mu = lo + (hi - lo) * rng.next_double();
    cls.models.push_back(bernoulli_model(means));
  }
  return cls;
}

std::vector<double> random_simplex(SplitRng& rng, int n) {
  std::vector<double> w(n);
  double total = 0.0;
  for (double& x : w) {
    x = -std::log(1.0 - rng.next_double());
    total += x;
  }
  for (double& x : w) x /= total;
  return w;
}

Policy random_policy(SplitRng& rng, int horizon, int states, int actions) {
  Policy pi(horizon, states, actions);
  for (int h = 0; h < horizon; ++h) {
    for (int s = 0; s < states; ++s) {
      const std::vector<double> row = random_simplex(rng, actions);
      for (int a = 0; a < actions; ++a) pi.at(h, s, a) = row[a];
    }
  }
  return pi;
}

TabularMdp random_mdp(SplitRng& rng, int horizon, int states, int actions) {
  TabularMdp mdp(horizon, states, actions);
  mdp.set_initial(random_simplex(rng, states));
  for (int h = 0; h + 1 < horizon; ++h) {
    for (int s = 0; s < states; ++s) {
      for (int a = 0; a < actions; ++a) {
        const std::vector<double> row = random_simplex(rng, states);
        for (int next = 0; next < states; ++next) {
          mdp.set_kernel(h, s, a, next, row[next]);
        }
      }
    }
  }
  const double step = 1.0 / horizon;
  for (int h = 0; h < horizon; ++h) {
    for (int s = 0; s < states; ++s) {
      for (int a = 0; a < actions; ++a) {
        const double p = rng.next_double();
        mdp.set_reward(
            h, s, a, OutcomeDist::categorical({{0.0, ""}, {step, ""}}, {1.0 - p, p}));
      }
    }
  }
  return mdp;
}

// --------------------------------------------------------------------------

void criterion_1_minimax_duality() {
  const auto start = std::chrono::steady_clock::now();
  SplitRng rng(1001);
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const int models = 2 + static_cast<int>(rng.next_below(5));
    const int decisions = 2 + static_cast<int>(rng.next_below(5));
    ModelClass cls = random_bernoulli_class(rng, models, decisions);
    const Model& ref = cls.models[rng.next_below(models)];
    const double gamma = 0.5 + 30.0 * rng.next_double();
    const DivergenceKind div =
        trial % 2 == 0 ? DivergenceKind::HellingerSq : DivergenceKind::SquaredMean;
    const double primal = dec_lp(cls, ref, gamma, div).value;
    const double dual = dec_dual_lp(cls, ref, gamma, div).value;
    worst = std::max(worst, std::abs(primal - dual));
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(1, worst <= 1e-6 && seconds < 60.0, "minimax duality on 500 random classes",
         "max |primal-dual| = " + fmt(worst) + ", " + fmt(seconds) + " s");
}

// Exact adversary against a decision distribution p under the squared-mean
// divergence: optimize each arm's mean separately, then the best arm's value
// in closed form.
double best_bernoulli_response(const std::vector<double>& p,
                               const std::vector<double>& fbar, double gamma) {
  const int arms = static_cast<int>(p.size());
  double worst = -1e300;
  for (int star = 0; star < arms; ++star) {
    double base = 0.0;
    double floor_value = 0.0;
    for (int a = 0; a < arms; ++a) {
      if (a == star) continue;
      const double f =
          std::clamp(fbar[a] - 1.0 / (2.0 * gamma * std::max(p[a], 1e-300)), 0.0, 1.0);
      base -= p[a] * (f + gamma * (f - fbar[a]) * (f - fbar[a]));
      floor_value = std::max(floor_value, f);
    }
    // g(v) = v (1 - p*) - gamma p* (v - fbar*)^2 on [floor, 1]
    const double ps = p[star];
    const double vertex = fbar[star] + (1.0 - ps) / (2.0 * gamma * std::max(ps, 1e-300));
    for (const double v : {floor_value, 1.0, std::clamp(vertex, floor_value, 1.0)}) {
      worst = std::max(worst,
                       base + v * (1.0 - ps) - gamma * ps * (v - fbar[star]) * (v - fbar[star]));
    }
  }
  return worst;
}

void criterion_2_igw_certificate() {
  SplitRng rng(1002);
  double worst_excess = -1e300;
  bool lp_dominated = true;
  for (const int arms : {2, 5, 10}) {
    for (const double gamma : {1.0, 10.0, 100.0}) {
      for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> fbar(arms);
        for (double& f : fbar) f = rng.next_double();
        const DecCertificate cert = igw(fbar, gamma);
        const double sup = best_bernoulli_response(cert.witness, fbar, gamma);
        worst_excess = std::max(worst_excess, sup - arms / gamma);

        ModelClass cls = random_bernoulli_class(rng, 5, arms);
        const double lp_value =
            dec_lp(cls, bernoulli_model(fbar), gamma, DivergenceKind::SquaredMean)
                .value;
        lp_dominated = lp_dominated && lp_value <= cert.value + 1e-9;
      }
    }
  }
  report(2, worst_excess <= 1e-9 && lp_dominated,
         "inverse gap weighting certifies A/gamma",
         "max excess = " + fmt(worst_excess));
}

void criterion_3_mab_lower_bound() {
  bool pass = true;
  std::string detail;
  for (const int arms : {2, 4, 8}) {
    for (const double gamma : {arms / 3.0, 1.0 * arms, 5.0 * arms}) {
      FamilyParams params;
      params.kind = FamilyKind::Mab;
      params.arms = arms;
      params.delta = arms / (12.0 * gamma);
      const HardFamily fam = make_family(params);
      const double dual =
          dec_dual_lp(fam.cls, *fam.ref, gamma, DivergenceKind::HellingerSq).value;
      const double bound = arms / (48.0 * gamma);
      if (dual < bound - 1e-9) {
        pass = false;
        detail = "A=" + std::to_string(arms) + " gamma=" + fmt(gamma) +
                 " dual=" + fmt(dual) + " < " + fmt(bound);
      }
    }
  }
  report(3, pass, "hard-family dual lower bound A/(48 gamma)",
         pass ? "all gamma >= A/3 pass" : detail);
}

void criterion_4_aggregation_regret() {
  SplitRng rng(1004);
  double worst = -1e300;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(7));
    const int decisions = 1 + static_cast<int>(rng.next_below(3));
    ModelClass cls = random_bernoulli_class(rng, n, decisions, 0.1, 0.9);
    OracleState state = make_oracle_state(n);
    const int rounds = 1 + static_cast<int>(rng.next_below(50));
    for (int t = 0; t < rounds; ++t) {
      const int pi = static_cast<int>(rng.next_below(decisions));
      const bool heads = rng.next_double() < 0.5;
      aggregate_update(state, cls, pi, Sample{heads ? 1.0 : 0.0, heads ? 1 : 0, ""});
    }
    worst = std::max(worst, logloss_regret(state) - std::log(double(n)));
  }
  report(4, worst <= 1e-9, "aggregation regret is at most log |class|",
         "max excess = " + fmt(worst));
}

struct RunBatch {
  std::vector<RegretTrace> traces;
};

RunBatch realizable_runs(int count, int rounds, E2dOption option) {
  RunBatch batch;
  SplitRng rng(1005);
  for (int run = 0; run < count; ++run) {
    ModelClass cls = random_bernoulli_class(rng, 4, 3, 0.1, 0.9);
    ExperimentConfig cfg;
    cfg.rounds = rounds;
    cfg.gamma = 1.0 + 10.0 * rng.next_double();
    cfg.option = option;
    cfg.divergence = DivergenceKind::HellingerSq;
    cfg.seed = 7000 + run;
    batch.traces.push_back(
        run_experiment(cls, static_cast<int>(rng.next_below(4)), cfg));
  }
  return batch;
}

void criterion_5_logloss_to_hellinger(const RunBatch& batch) {
  const int runs = static_cast<int>(batch.traces.size());
  std::vector<double> diff(runs);
  for (int i = 0; i < runs; ++i) {
    diff[i] = batch.traces[i].est_h - batch.traces[i].reg_kl;
  }
  double mean = 0.0;
  for (double d : diff) mean += d;
  mean /= runs;
  double var = 0.0;
  for (double d : diff) var += (d - mean) * (d - mean);
  var /= (runs - 1);
  const double se = std::sqrt(var / runs);
  report(5, mean <= 3.0 * se, "mean hellinger error <= mean log-loss regret",
         "mean diff = " + fmt(mean) + ", 3 se = " + fmt(3.0 * se));
}

void criterion_6_pathwise_bound(const RunBatch& batch) {
  double worst = -1e300;
  bool sums_ok = true;
  int counted = 0;
  const auto absorb = [&](const RegretTrace& trace) {
    worst = std::max(worst, trace.max_pathwise_violation);
    sums_ok = sums_ok && trace.cum_regret <= trace.bound_rhs + 1e-6;
    ++counted;
  };
  for (const auto& trace : batch.traces) absorb(trace);
  // A few runs through the other planner variants.
  SplitRng rng(1006);
  for (int run = 0; run < 10; ++run) {
    ModelClass cls = random_bernoulli_class(rng, 4, 3, 0.1, 0.9);
    ExperimentConfig cfg;
    cfg.rounds = 25;
    cfg.gamma = 2.0;
    cfg.divergence = DivergenceKind::HellingerSq;
    cfg.seed = 8800 + run;
    cfg.option = run % 2 == 0 ? E2dOption::Generalized : E2dOption::OptionII;
    if (cfg.option == E2dOption::OptionII) {
      cfg.radius_sq = std::numeric_limits<double>::infinity();
    }
    absorb(run_experiment(cls, static_cast<int>(rng.next_below(4)), cfg));
  }
  report(6, worst <= 1e-9 && sums_ok,
         "per-round regret <= dec value + gamma * estimation increment",
         "runs = " + std::to_string(counted) + ", max violation = " + fmt(worst));
}

void criterion_7_regret_scaling() {
  const auto start = std::chrono::steady_clock::now();
  const int arms = 5;
  const double delta = 0.25;
  ModelClass cls;
  for (int i = 0; i < arms; ++i) {
    std::vector<double> means(arms, 0.5);
    means[i] += delta;
    cls.models.push_back(bernoulli_model(means));
  }
  const auto mean_regret = [&](int rounds) {
    double total = 0.0;
    for (int seed = 0; seed < 20; ++seed) {
      ExperimentConfig cfg;
      cfg.rounds = rounds;
      cfg.gamma = std::sqrt(arms * rounds / std::log(double(arms)));
      cfg.option = E2dOption::OptionI;
      cfg.divergence = DivergenceKind::HellingerSq;
      cfg.seed = 4200 + seed;
      total += run_experiment(cls, seed % arms, cfg).cum_regret;
    }
    return total / 20.0;
  };
  const double at_t = mean_regret(2000);
  const double at_2t = mean_regret(4000);
  const double budget = 6.0 * std::sqrt(arms * 2000.0 * std::log(double(arms)));
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(7,
         at_t <= budget && at_2t <= 1.6 * at_t && seconds < 300.0,
         "bandit benchmark regret scaling",
         "mean(T)=" + fmt(at_t) + " budget=" + fmt(budget) +
             " ratio=" + fmt(at_2t / at_t) + " time=" + fmt(seconds) + "s");
}

void criterion_8_pcigw_certificate() {
  SplitRng rng(1008);
  bool pass = true;
  std::string detail = "all shapes within budget";
  for (const auto [horizon, states, actions] :
       {std::tuple{2, 2, 2}, std::tuple{3, 3, 2}}) {
    for (const double gamma : {10.0, 100.0}) {
      const double eta = gamma / (21.0 * horizon * horizon);
      const TabularMdp ref = random_mdp(rng, horizon, states, actions);
      for (const bool floor : {false, true}) {
        const PolicyCover cover = pcigw(ref, eta, floor);
        const double lambda_cap = 2.0 * horizon * states * actions;
        if (cover.lambda < 1.0 - 1e-9 || cover.lambda > lambda_cap + 1e-9) {
          pass = false;
          detail = "lambda out of range";
        }
        const double budget =
            (floor ? 175.0 : 95.0) * std::pow(double(horizon), 3) * states *
            actions / gamma;
        for (int trial = 0; trial < 200; ++trial) {
          const TabularMdp test = random_mdp(rng, horizon, states, actions);
          const double objective = cover_objective(cover, test, ref, gamma);
          if (objective > budget + 1e-6) {
            pass = false;
            detail = "objective " + fmt(objective) + " > " + fmt(budget);
          }
        }
      }
    }
  }
  report(8, pass, "policy-cover certificate with and without flooring", detail);
}

void criterion_9_lfp_vs_sampled_policies() {
  SplitRng rng(1009);
  double worst_short = -1e300;
  for (int trial = 0; trial < 50; ++trial) {
    const TabularMdp mdp = random_mdp(rng, 2, 2, 2);
    const double eta = 5.0;
    const int h = static_cast<int>(rng.next_below(2));
    const int s = static_cast<int>(rng.next_below(2));
    const int a = static_cast<int>(rng.next_below(2));
    const LfpResult res = lfp_policy(mdp, h, s, a, eta);
    const double f_opt = value_iteration(mdp).value;
    double best = 0.0;
    for (int k = 0; k < 10000; ++k) {
      const Policy pi = random_policy(rng, 2, 2, 2);
      best = std::max(best, occupancy(mdp, pi).at(h, s, a) /
                                (16.0 + eta * (f_opt - policy_value(mdp, pi))));
    }
    worst_short = std::max(worst_short, best - res.ratio);
  }
  report(9, worst_short <= 1e-3, "occupancy program beats sampled policies",
         "max shortfall = " + fmt(worst_short));
}

void criterion_10_spanner() {
  SplitRng rng(1010);
  double worst_coef = 0.0, worst_design = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = 2 + static_cast<int>(rng.next_below(4));
    const int members = dim + 1 + static_cast<int>(rng.next_below(50 - dim));
    BilinearEmbedding emb;
    emb.dim = dim;
    emb.horizon = 1;
    for (int m = 0; m < members; ++m) {
      Eigen::VectorXd x(dim);
      for (int j = 0; j < dim; ++j) x[j] = rng.next_gaussian();
      x *= (0.3 + 0.7 * rng.next_double()) / x.norm();
      Eigen::MatrixXd xm(dim, 1);
      xm.col(0) = x;
      emb.x.push_back(xm);
      emb.w.push_back(Eigen::MatrixXd::Zero(dim, 1));
    }
    // Gaps from a random reward functional; the best member is the reference.
    Eigen::VectorXd theta(dim);
    for (int j = 0; j < dim; ++j) theta[j] = rng.next_gaussian();
    theta.normalize();
    emb.theta_ref = theta;
    emb.ref_index = 0;
    for (int m = 1; m < members; ++m) {
      if (emb.f_ref(m) > emb.f_ref(emb.ref_index)) emb.ref_index = m;
    }
    const PlanningOracle plan = enumeration_oracle(emb);
    const double eta = trial % 2 == 0 ? 1.0 : 10.0;
    const std::vector<int> init = greedy_volume_init(emb, 0);
    const std::vector<int> basis = igw_spanner(emb, plan, 0, eta, init, 0.0);
    for (int m = 0; m < members; ++m) {
      const Eigen::VectorXd coef = spanner_coefficients(emb, 0, eta, basis, m);
      for (int j = 0; j < dim; ++j) {
        worst_coef = std::max(worst_coef, std::abs(coef[j]));
      }
    }
    worst_design =
        std::max(worst_design, design_test_value(emb, 0, eta, basis) - 2.0 * dim * dim);
  }
  report(10, worst_coef <= 2.0 + 1e-6 && worst_design <= 1e-6,
         "barycentric spanner coefficients and design test",
         "max |coef| = " + fmt(worst_coef));
}

void criterion_11_simulation_lemma() {
  SplitRng rng(1011);
  double worst = -1e300;
  for (int trial = 0; trial < 500; ++trial) {
    const int horizon = 2 + static_cast<int>(rng.next_below(2));
    const int states = 2 + static_cast<int>(rng.next_below(2));
    const int actions = 2;
    TabularMdp a = random_mdp(rng, horizon, states, actions);
    TabularMdp b = random_mdp(rng, horizon, states, actions);
    b.set_initial(a.initial());
    const Policy pi = random_policy(rng, horizon, states, actions);
    const auto [lhs, rhs] = simulation_gap(a, b, pi);
    worst = std::max(worst, lhs - rhs);
  }
  report(11, worst <= 1e-9, "local simulation bound on 500 random pairs",
         "max lhs-rhs = " + fmt(worst));
}

void criterion_12_family_suite() {
  bool pass = true;
  std::string detail = "all families verified";
  const auto check = [&](const char* name, FamilyParams params, int samples) {
    const HardFamily fam = make_family(params);
    const FamilyReport rep = verify_family(fam, samples, 2024);
    if (!rep.passes) {
      pass = false;
      detail = std::string(name) + " failed";
    }
  };
  {
    FamilyParams p;
    p.kind = FamilyKind::Mab;
    p.arms = 5;
    p.delta = 0.1;
    check("mab", p, 0);
  }
  {
    FamilyParams p;
    p.kind = FamilyKind::Linear;
    p.dim = 4;
    p.delta = 0.1;
    p.seed = 12;
    check("linear", p, 0);
  }
  {
    FamilyParams p;
    p.kind = FamilyKind::LipschitzGrid;
    p.eps = 0.1;
    check("lipschitz", p, 0);
  }
  {
    FamilyParams p;
    p.kind = FamilyKind::ReluGrid;
    p.dim = 3;
    p.eps = 0.2;
    p.seed = 13;
    check("relu", p, 0);
  }
  {
    FamilyParams p;
    p.kind = FamilyKind::GapMab;
    p.arms = 4;
    p.delta = 0.1;
    check("gap-mab", p, 0);
  }
  {
    FamilyParams p;
    p.kind = FamilyKind::GapLinear;
    p.dim = 3;
    p.delta = 0.2;
    check("gap-linear", p, 0);
  }
  {
    FamilyParams p;
    p.kind = FamilyKind::TreeMdp;
    p.states = 4;
    p.actions = 2;
    p.horizon = 3;
    p.delta = 0.1;
    check("tree", p, 500);
  }
  {
    FamilyParams p;
    p.kind = FamilyKind::LinearQstar;
    p.dim = 64;
    p.horizon = 2;
    p.seed = 14;
    check("linear-qstar", p, 500);
  }
  report(12, pass, "built-in hard families verify at their constants", detail);
}

}  // namespace

int main() {
  criterion_1_minimax_duality();
  criterion_2_igw_certificate();
  criterion_3_mab_lower_bound();
  criterion_4_aggregation_regret();
  const RunBatch batch = realizable_runs(200, 30, E2dOption::OptionI);
  criterion_5_logloss_to_hellinger(batch);
  criterion_6_pathwise_bound(batch);
  criterion_7_regret_scaling();
  criterion_8_pcigw_certificate();
  criterion_9_lfp_vs_sampled_policies();
  criterion_10_spanner();
  criterion_11_simulation_lemma();
  criterion_12_family_suite();
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all 12 criteria passed\n");
  return 0;
}
