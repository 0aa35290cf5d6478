#pragma once

#include <vector>

#include "declab/mdp.hpp"
#include "declab/model.hpp"
#include "declab/rng.hpp"

namespace declab::testing {

inline Model bernoulli_model(const std::vector<double>& means) {
  std::vector<OutcomeDist> outcomes;
  outcomes.reserve(means.size());
  for (double mu : means) outcomes.push_back(OutcomeDist::bernoulli(mu));
  return Model(std::move(outcomes));
}

inline ModelClass bernoulli_class(const std::vector<std::vector<double>>& means) {
  ModelClass cls;
  for (const auto& row : means) cls.models.push_back(bernoulli_model(row));
  return cls;
}

inline ModelClass random_bernoulli_class(SplitRng& rng, int models, int decisions,
                                         double lo = 0.05, double hi = 0.95) {
  ModelClass cls;
  for (int m = 0; m < models; ++m) {
    std::vector<OutcomeDist> outcomes;
    for (int pi = 0; pi < decisions; ++pi) {
      outcomes.push_back(OutcomeDist::bernoulli(lo + (hi - lo) * rng.next_double()));
    }
    cls.models.emplace_back(std::move(outcomes));
  }
  return cls;
}

inline std::vector<double> random_simplex(SplitRng& rng, int n) {
  std::vector<double> w(n);
  double total = 0.0;
  for (double& x : w) {
    x = -std::log(1.0 - rng.next_double());
    total += x;
  }
  double fixup = 0.0;
  for (int i = 0; i < n; ++i) {
    w[i] /= total;
    fixup += w[i];
  }
  w[n - 1] += 1.0 - fixup;
  return w;
}

inline Policy random_policy(SplitRng& rng, int horizon, int states, int actions) {
  Policy pi(horizon, states, actions);
  for (int h = 0; h < horizon; ++h) {
    for (int s = 0; s < states; ++s) {
      double total = 0.0;
      for (int a = 0; a < actions; ++a) {
        pi.at(h, s, a) = -std::log(1.0 - rng.next_double());
        total += pi.at(h, s, a);
      }
      double fixup = 0.0;
      for (int a = 0; a < actions; ++a) {
        pi.at(h, s, a) /= total;
        fixup += pi.at(h, s, a);
      }
      pi.at(h, s, actions - 1) += 1.0 - fixup;
    }
  }
  return pi;
}

// Random layered MDP whose episode reward always lies in [0,1]: per-step
// rewards are supported on {0, 1/H}.
inline TabularMdp random_mdp(SplitRng& rng, int horizon, int states, int actions) {
  TabularMdp mdp(horizon, states, actions);
  std::vector<double> d1 = random_simplex(rng, states);
  mdp.set_initial(std::move(d1));
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
  const double step_reward = 1.0 / static_cast<double>(horizon);
  for (int h = 0; h < horizon; ++h) {
    for (int s = 0; s < states; ++s) {
      for (int a = 0; a < actions; ++a) {
        const double p = rng.next_double();
        mdp.set_reward(h, s, a,
                       OutcomeDist::categorical(
                           {{0.0, ""}, {step_reward, ""}}, {1.0 - p, p}));
      }
    }
  }
  return mdp;
}

}  // namespace declab::testing
