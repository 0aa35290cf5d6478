#include "declab/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "declab/divergence.hpp"
#include "declab/errors.hpp"

namespace declab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// logsumexp with max subtraction; -inf entries drop out.
double log_sum_exp(const std::vector<double>& v) {
  double best = kNegInf;
  for (double x : v) best = std::max(best, x);
  if (best == kNegInf) return kNegInf;
  double total = 0.0;
  for (double x : v) {
    if (x != kNegInf) total += std::exp(x - best);
  }
  return best + std::log(total);
}

}  // namespace

OracleState make_oracle_state(int num_models) {
  if (num_models <= 0) throw InvalidParamsError("oracle needs a nonempty class");
  OracleState state;
  state.log_weights.assign(num_models, -std::log(static_cast<double>(num_models)));
  state.cum_logloss.assign(num_models, 0.0);
  return state;
}

void aggregate_update_with(OracleState& state,
                           const std::vector<double>& log_densities) {
  if (log_densities.size() != state.log_weights.size()) {
    throw WeightDimError("log density vector does not match class size");
  }
  const int n = static_cast<int>(log_densities.size());

  std::vector<double> joint(n);
  for (int i = 0; i < n; ++i) joint[i] = state.log_weights[i] + log_densities[i];
  const double mix_log_density = log_sum_exp(joint);
  if (mix_log_density == kNegInf) {
    throw AllZeroLikelihoodError("every model assigns zero mass to the observation");
  }

  state.cum_predict_logloss -= mix_log_density;
  for (int i = 0; i < n; ++i) {
    state.cum_logloss[i] -= log_densities[i];
    state.log_weights[i] = joint[i] - mix_log_density;
  }
  ++state.round;
}

void aggregate_update(OracleState& state, const ModelClass& cls, int decision,
                      const Sample& obs) {
  if (decision < 0 || decision >= cls.num_decisions()) {
    throw InvalidParamsError("played decision out of range");
  }
  std::vector<double> log_densities(cls.num_models());
  for (int i = 0; i < cls.num_models(); ++i) {
    log_densities[i] = cls.models[i].outcome(decision).log_density(obs);
  }
  aggregate_update_with(state, log_densities);
}

double logloss_regret(const OracleState& state) {
  double best = std::numeric_limits<double>::infinity();
  for (double loss : state.cum_logloss) best = std::min(best, loss);
  return state.cum_predict_logloss - best;
}

std::vector<double> posterior(const OracleState& state) {
  std::vector<double> w(state.log_weights.size());
  double total = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = std::exp(state.log_weights[i]);
    total += w[i];
  }
  for (double& x : w) x /= total;
  return w;
}

namespace {

OutcomeDist smooth_toward_uniform(const OutcomeDist& d, double alpha) {
  switch (d.kind()) {
    case DistKind::Bernoulli:
      return OutcomeDist::bernoulli((1.0 - alpha) * d.mu() + alpha * 0.5);
    case DistKind::Rademacher:
      return OutcomeDist::rademacher((1.0 - alpha) * d.mu());
    case DistKind::Categorical: {
      std::vector<double> probs = d.probs();
      const double floor = alpha / static_cast<double>(probs.size());
      for (double& p : probs) p = (1.0 - alpha) * p + floor;
      return OutcomeDist::categorical(d.support(), std::move(probs));
    }
    default:
      throw MixtureUnsupportedError("smoothing needs a shared discrete support");
  }
}

}  // namespace

Model predict(const OracleState& state, const ModelClass& cls,
              double smoothing_alpha) {
  if (!(smoothing_alpha >= 0.0 && smoothing_alpha < 1.0)) {
    throw InvalidParamsError("smoothing alpha must lie in [0,1)");
  }
  Model mixed = mixture(cls, posterior(state));
  if (smoothing_alpha == 0.0) return mixed;
  std::vector<OutcomeDist> smoothed;
  smoothed.reserve(mixed.num_decisions());
  for (const auto& d : mixed.outcomes()) {
    smoothed.push_back(smooth_toward_uniform(d, smoothing_alpha));
  }
  return Model(std::move(smoothed));
}

Model predict_restricted(const OracleState& state, const ModelClass& cls,
                         const std::vector<int>& active) {
  if (active.empty()) throw EmptyActiveSetError("active set is empty");
  const std::vector<double> w = posterior(state);
  std::vector<double> restricted(active.size());
  double total = 0.0;
  for (std::size_t i = 0; i < active.size(); ++i) {
    restricted[i] = w[active[i]];
    total += restricted[i];
  }
  if (total <= 0.0) {
    // All active weights underflowed; fall back to uniform over the set.
    std::fill(restricted.begin(), restricted.end(),
              1.0 / static_cast<double>(active.size()));
  } else {
    for (double& x : restricted) x /= total;
  }
  return mixture_of(cls, active, restricted);
}

std::vector<int> confidence_set(const std::vector<EstimateRound>& history,
                                const ModelClass& cls, double radius_sq) {
  const int n = cls.num_models();
  std::vector<double> cum(n, 0.0);
  for (const auto& round : history) {
    for (int i = 0; i < n; ++i) {
      double err = 0.0;
      for (int pi = 0; pi < cls.num_decisions(); ++pi) {
        const double p = round.decision_probs[pi];
        if (p == 0.0) continue;
        err += p * hellinger_sq(cls.models[i].outcome(pi), round.estimate.outcome(pi));
      }
      cum[i] += err;
    }
  }
  std::vector<int> kept;
  for (int i = 0; i < n; ++i) {
    if (cum[i] <= radius_sq) kept.push_back(i);
  }
  return kept;
}

void ledger_add(OracleState& state, const std::vector<double>& decision_probs,
                const Model& estimate, const Model& truth) {
  double increment = 0.0;
  for (int pi = 0; pi < truth.num_decisions(); ++pi) {
    const double p = decision_probs[pi];
    if (p == 0.0) continue;
    increment += p * hellinger_sq(truth.outcome(pi), estimate.outcome(pi));
  }
  state.hellinger_ledger += increment;
}

double default_radius_sq(int class_size, double delta) {
  return std::log(static_cast<double>(class_size)) + 2.0 * std::log(1.0 / delta);
}

}  // namespace declab
