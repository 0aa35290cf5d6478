#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "declab/dec.hpp"
#include "declab/estimation.hpp"
#include "declab/model.hpp"
#include "declab/rng.hpp"

namespace declab {

enum class E2dOption { OptionI, OptionII, Bayes, Generalized, Contextual };

struct ExperimentConfig {
  int rounds = 0;
  double gamma = 1.0;
  E2dOption option = E2dOption::OptionI;
  DivergenceKind divergence = DivergenceKind::HellingerSq;
  std::uint64_t seed = 0;
  double smoothing_alpha = 0.0;
  std::optional<double> radius_sq;     // Option II; defaults to
                                       // default_radius_sq(|class|)
  std::vector<double> prior;           // Bayes; defaults to uniform

  void validate() const;
};

struct RoundRecord {
  int t = 0;
  int decision = 0;
  double reward = 0.0;
  double inst_regret = 0.0;       // expected under p^t and the true model
  double dec_value = 0.0;
  double hellinger_increment = 0.0;
  double cum_regret = 0.0;
  double cum_est = 0.0;
};

struct RegretTrace {
  std::vector<RoundRecord> rounds;
  double cum_regret = 0.0;
  double est_h = 0.0;
  double reg_kl = 0.0;
  double bound_rhs = 0.0;              // sum of dec values + gamma * est_h
  double max_pathwise_violation = 0.0; // worst round-level slack violation
};

/// Everything a single step may need beyond the oracle state.
struct E2dStepContext {
  double smoothing_alpha = 0.0;
  double radius_sq = 0.0;
  const std::vector<EstimateRound>* history = nullptr;  // Option II
};

struct E2dStepResult {
  std::vector<double> decision_probs;
  double dec_value = 0.0;
  std::optional<Model> estimate;           // point estimate backing the step
  std::vector<double> randomized_weights;  // Generalized: posterior over class
  std::vector<int> active;                 // confidence set (Option II)
};

/// One planning step: turns the current estimate into the minimax decision
/// distribution and its certified value.
E2dStepResult e2d_step(E2dOption option, const OracleState& state,
                       const ModelClass& cls, double gamma, DivergenceKind div,
                       const E2dStepContext& ctx);

struct BayesStep {
  std::vector<double> decision_probs;
  double dec_value = 0.0;
  ModelClass coarsened;
  std::vector<double> coarsened_weights;  // posterior mass per group
  std::optional<Model> reference;         // posterior-mean model
};

/// Bayesian step: groups the class by optimal decision, mixes within groups
/// under the posterior, and solves the minimax program on the coarsened
/// class against the posterior-mean model.
BayesStep e2d_bayes_step(const ModelClass& cls,
                         const std::vector<double>& posterior_weights,
                         double gamma);

/// Runs the full estimate -> solve -> sample -> update loop against the
/// true model cls.models[truth_index]. Deterministic from the seed.
RegretTrace run_experiment(const ModelClass& cls, int truth_index,
                           const ExperimentConfig& cfg);

// ---------------------------------------------------------------------------
// Contextual variant: models are maps (context, decision) -> outcome.

struct ContextualModel {
  std::vector<Model> slices;  // one per context

  int num_contexts() const { return static_cast<int>(slices.size()); }
};

struct ContextualModelClass {
  std::vector<ContextualModel> models;
  std::optional<int> truth_index;

  int num_models() const { return static_cast<int>(models.size()); }
  int num_contexts() const {
    return models.empty() ? 0 : models.front().num_contexts();
  }
  int num_decisions() const {
    return models.empty() ? 0 : models.front().slices.front().num_decisions();
  }
  void validate() const;
};

/// The class projected to one context.
ModelClass slice_class(const ContextualModelClass& cls, int context);

/// Projects every model to the slice at the observed context and runs the
/// plain step on the projected class. Throws UnknownContextError.
E2dStepResult contextual_e2d_step(int context, const ContextualModelClass& cls,
                                  const OracleState& state, double gamma,
                                  DivergenceKind div,
                                  double smoothing_alpha = 0.0);

/// Contextual loop; contexts are drawn uniformly from the finite context set
/// (seeded, independent of the decision stream).
RegretTrace run_contextual_experiment(const ContextualModelClass& cls,
                                      int truth_index,
                                      const ExperimentConfig& cfg);

}  // namespace declab
