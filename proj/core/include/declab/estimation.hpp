#pragma once

#include <vector>

#include "declab/model.hpp"

namespace declab {

/// Posterior log-weights over a finite class plus cumulative log-loss and
/// Hellinger-error ledgers. Single-owner mutable per run.
struct OracleState {
  std::vector<double> log_weights;    // normalized in log space
  std::vector<double> cum_logloss;    // per-model cumulative log loss
  double cum_predict_logloss = 0.0;   // cumulative log loss of the mixture
  double hellinger_ledger = 0.0;      // cumulative expected Hellinger error
  int round = 0;
};

/// Uniform-prior state over `num_models` experts.
OracleState make_oracle_state(int num_models);

/// One exponential-weights step from raw per-model log densities of the
/// observation. Infinite mass mismatches zero out the offending weights;
/// throws AllZeroLikelihoodError when no model explains the observation.
void aggregate_update_with(OracleState& state,
                           const std::vector<double>& log_densities);

/// Exponential-weights update after playing `decision` and observing `obs`.
void aggregate_update(OracleState& state, const ModelClass& cls, int decision,
                      const Sample& obs);

/// Cumulative mixture log loss minus the best single model in hindsight.
double logloss_regret(const OracleState& state);

/// Posterior weights (linear space).
std::vector<double> posterior(const OracleState& state);

/// Posterior-mean model, optionally smoothed toward the uniform reference
/// over the shared discrete support:
///   h = (1 - alpha) g + alpha * uniform.
/// Throws MixtureUnsupportedError for kinds without a closed-form mixture.
Model predict(const OracleState& state, const ModelClass& cls,
              double smoothing_alpha = 0.0);

/// Sleeping-experts prediction: posterior restricted to `active` and
/// renormalized. Throws EmptyActiveSetError when active is empty.
Model predict_restricted(const OracleState& state, const ModelClass& cls,
                         const std::vector<int>& active);

/// One recorded round for confidence-set construction: the decision
/// distribution played and the estimate used that round.
struct EstimateRound {
  std::vector<double> decision_probs;
  Model estimate;
};

/// Indices whose cumulative expected Hellinger error against past estimates
/// stays within radius_sq. Cumulative errors are nondecreasing, so the sets
/// are nested across prefixes of the history.
std::vector<int> confidence_set(const std::vector<EstimateRound>& history,
                                const ModelClass& cls, double radius_sq);

/// Adds E_{pi ~ p}[Hellinger^2(truth(pi), estimate(pi))] to the ledger.
void ledger_add(OracleState& state, const std::vector<double>& decision_probs,
                const Model& estimate, const Model& truth);

/// Default confidence radius log|class| + 2 log(1/delta).
double default_radius_sq(int class_size, double delta = 0.05);

}  // namespace declab
