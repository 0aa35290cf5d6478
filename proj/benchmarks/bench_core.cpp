#include <benchmark/benchmark.h>

#include <vector>

#include "declab/dec.hpp"
#include "declab/e2d.hpp"
#include "declab/mdp.hpp"
#include "declab/pcigw.hpp"
#include "declab/rng.hpp"

using namespace declab;

namespace {

ModelClass random_class(SplitRng& rng, int models, int decisions) {
  ModelClass cls;
  for (int m = 0; m < models; ++m) {
    std::vector<OutcomeDist> outcomes;
    for (int pi = 0; pi < decisions; ++pi) {
      outcomes.push_back(OutcomeDist::bernoulli(0.05 + 0.9 * rng.next_double()));
    }
    cls.models.emplace_back(std::move(outcomes));
  }
  return cls;
}

std::vector<double> simplex(SplitRng& rng, int n) {
  std::vector<double> w(n);
  double total = 0.0;
  for (double& x : w) {
    x = 0.05 + rng.next_double();
    total += x;
  }
  for (double& x : w) x /= total;
  return w;
}

TabularMdp random_mdp(SplitRng& rng, int horizon, int states, int actions) {
  TabularMdp mdp(horizon, states, actions);
  mdp.set_initial(simplex(rng, states));
  for (int h = 0; h + 1 < horizon; ++h) {
    for (int s = 0; s < states; ++s) {
      for (int a = 0; a < actions; ++a) {
        const auto row = simplex(rng, states);
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

void BM_DecLp(benchmark::State& state) {
  SplitRng rng(1);
  const int n = static_cast<int>(state.range(0));
  const ModelClass cls = random_class(rng, n, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        dec_lp(cls, cls.models[0], 10.0, DivergenceKind::HellingerSq).value);
  }
}
BENCHMARK(BM_DecLp)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_Igw(benchmark::State& state) {
  SplitRng rng(2);
  std::vector<double> fbar(state.range(0));
  for (double& f : fbar) f = rng.next_double();
  for (auto _ : state) {
    benchmark::DoNotOptimize(igw(fbar, 50.0).witness[0]);
  }
}
BENCHMARK(BM_Igw)->Arg(10)->Arg(100)->Arg(1000);

void BM_E2dRound(benchmark::State& state) {
  SplitRng rng(3);
  const ModelClass cls = random_class(rng, 5, 5);
  ExperimentConfig cfg;
  cfg.rounds = 32;
  cfg.gamma = 20.0;
  cfg.option = E2dOption::OptionI;
  cfg.divergence = DivergenceKind::HellingerSq;
  for (auto _ : state) {
    cfg.seed++;
    benchmark::DoNotOptimize(run_experiment(cls, 0, cfg).cum_regret);
  }
  state.SetItemsProcessed(state.iterations() * cfg.rounds);
}
BENCHMARK(BM_E2dRound);

void BM_PolicyCover(benchmark::State& state) {
  SplitRng rng(4);
  const TabularMdp ref = random_mdp(rng, 3, 3, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pcigw(ref, 2.0).lambda);
  }
}
BENCHMARK(BM_PolicyCover);

void BM_TrajectoryHellinger(benchmark::State& state) {
  SplitRng rng(5);
  TabularMdp a = random_mdp(rng, 4, 4, 3);
  TabularMdp b = random_mdp(rng, 4, 4, 3);
  b.set_initial(a.initial());
  Policy pi(4, 4, 3);
  for (int h = 0; h < 4; ++h) {
    for (int s = 0; s < 4; ++s) {
      const auto row = simplex(rng, 3);
      for (int act = 0; act < 3; ++act) pi.at(h, s, act) = row[act];
    }
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(trajectory_hellinger_sq(a, b, pi));
  }
}
BENCHMARK(BM_TrajectoryHellinger);

}  // namespace

BENCHMARK_MAIN();
