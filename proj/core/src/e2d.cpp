#include "declab/e2d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "declab/errors.hpp"

namespace declab {

void ExperimentConfig::validate() const {
  if (rounds < 0) throw InvalidParamsError("rounds must be nonnegative");
  if (!(gamma > 0.0)) throw InvalidParamsError("gamma must be positive");
  if (!(smoothing_alpha >= 0.0 && smoothing_alpha < 1.0)) {
    throw InvalidParamsError("smoothing alpha must lie in [0,1)");
  }
}

namespace {

int sample_index(const std::vector<double>& probs, SplitRng& rng) {
  const double u = rng.next_double();
  double cum = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    cum += probs[i];
    if (u < cum) return static_cast<int>(i);
  }
  return static_cast<int>(probs.size()) - 1;
}

// E_{pi~p}[ div(truth(pi), estimate(pi)) ], or the nu-average for a
// randomized estimate.
double expected_divergence(const std::vector<double>& probs, const Model& truth,
                           const E2dStepResult& step, const ModelClass& cls,
                           DivergenceKind div) {
  double total = 0.0;
  for (int pi = 0; pi < truth.num_decisions(); ++pi) {
    const double p = probs[pi];
    if (p == 0.0) continue;
    if (!step.randomized_weights.empty()) {
      double avg = 0.0;
      for (int j = 0; j < cls.num_models(); ++j) {
        const double w = step.randomized_weights[j];
        if (w == 0.0) continue;
        avg += w * divergence(div, truth.outcome(pi), cls.models[j].outcome(pi));
      }
      total += p * avg;
    } else {
      total += p * divergence(div, truth.outcome(pi), step.estimate->outcome(pi));
    }
  }
  return total;
}

}  // namespace

E2dStepResult e2d_step(E2dOption option, const OracleState& state,
                       const ModelClass& cls, double gamma, DivergenceKind div,
                       const E2dStepContext& ctx) {
  E2dStepResult result;
  switch (option) {
    case E2dOption::OptionI: {
      Model estimate = predict(state, cls, ctx.smoothing_alpha);
      DecCertificate cert = dec_lp(cls, estimate, gamma, div);
      result.decision_probs = std::move(cert.witness);
      result.dec_value = cert.value;
      result.estimate = std::move(estimate);
      return result;
    }
    case E2dOption::OptionII: {
      static const std::vector<EstimateRound> kEmpty;
      const auto& history = ctx.history ? *ctx.history : kEmpty;
      result.active = confidence_set(history, cls, ctx.radius_sq);
      if (result.active.empty()) {
        // Radius excluded everything; recover with the full class.
        result.active.resize(cls.num_models());
        for (int i = 0; i < cls.num_models(); ++i) result.active[i] = i;
      }
      Model estimate = predict_restricted(state, cls, result.active);
      ModelClass restricted;
      for (int idx : result.active) restricted.models.push_back(cls.models[idx]);
      DecCertificate cert = dec_lp(restricted, estimate, gamma, div);
      result.decision_probs = std::move(cert.witness);
      result.dec_value = cert.value;
      result.estimate = std::move(estimate);
      return result;
    }
    case E2dOption::Generalized: {
      result.randomized_weights = posterior(state);
      std::vector<Model> support;
      std::vector<double> support_w;
      for (int i = 0; i < cls.num_models(); ++i) {
        if (result.randomized_weights[i] > 0.0) {
          support.push_back(cls.models[i]);
          support_w.push_back(result.randomized_weights[i]);
        }
      }
      DecCertificate cert = dec_randomized(cls, support, support_w, gamma, div);
      result.decision_probs = std::move(cert.witness);
      result.dec_value = cert.value;
      return result;
    }
    case E2dOption::Bayes: {
      BayesStep bayes = e2d_bayes_step(cls, posterior(state), gamma);
      result.decision_probs = std::move(bayes.decision_probs);
      result.dec_value = bayes.dec_value;
      result.estimate = std::move(bayes.reference);
      return result;
    }
    case E2dOption::Contextual:
      throw InvalidParamsError("contextual steps go through contextual_e2d_step");
  }
  return result;
}

BayesStep e2d_bayes_step(const ModelClass& cls,
                         const std::vector<double>& posterior_weights,
                         double gamma) {
  cls.validate();
  if (posterior_weights.size() != static_cast<std::size_t>(cls.num_models())) {
    throw WeightDimError("posterior does not match class size");
  }

  BayesStep step;
  step.reference = mixture(cls, posterior_weights);

  // Group members by optimal decision; each group coarsens to its
  // posterior-conditional mixture.
  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < cls.num_models(); ++i) {
    groups[cls.models[i].optimal_decision()].push_back(i);
  }
  for (const auto& [decision, members] : groups) {
    double mass = 0.0;
    for (int idx : members) mass += posterior_weights[idx];
    if (mass <= 0.0) continue;
    std::vector<double> within(members.size());
    for (std::size_t k = 0; k < members.size(); ++k) {
      within[k] = posterior_weights[members[k]] / mass;
    }
    step.coarsened.models.push_back(mixture_of(cls, members, within));
    step.coarsened_weights.push_back(mass);
  }

  DecCertificate cert =
      dec_lp(step.coarsened, *step.reference, gamma, DivergenceKind::HellingerSq);
  step.decision_probs = std::move(cert.witness);
  step.dec_value = cert.value;
  return step;
}

RegretTrace run_experiment(const ModelClass& cls, int truth_index,
                           const ExperimentConfig& cfg) {
  cfg.validate();
  cls.validate();
  if (truth_index < 0 || truth_index >= cls.num_models()) {
    throw InvalidParamsError("truth index out of range");
  }
  const Model& truth = cls.models[truth_index];

  E2dStepContext ctx;
  ctx.smoothing_alpha = cfg.smoothing_alpha;
  ctx.radius_sq = cfg.radius_sq.value_or(default_radius_sq(cls.num_models()));
  std::vector<EstimateRound> history;
  ctx.history = &history;

  OracleState state = make_oracle_state(cls.num_models());
  if (cfg.option == E2dOption::Bayes && !cfg.prior.empty()) {
    if (cfg.prior.size() != static_cast<std::size_t>(cls.num_models())) {
      throw WeightDimError("prior does not match class size");
    }
    for (int i = 0; i < cls.num_models(); ++i) {
      state.log_weights[i] = cfg.prior[i] > 0.0
                                 ? std::log(cfg.prior[i])
                                 : -std::numeric_limits<double>::infinity();
    }
  }

  SplitRng root(cfg.seed);
  RegretTrace trace;
  trace.rounds.reserve(cfg.rounds);
  double sum_dec = 0.0;

  for (int t = 1; t <= cfg.rounds; ++t) {
    E2dStepResult step = e2d_step(cfg.option, state, cls, cfg.gamma,
                                  cfg.divergence, ctx);

    RoundRecord rec;
    rec.t = t;
    rec.dec_value = step.dec_value;
    for (int pi = 0; pi < cls.num_decisions(); ++pi) {
      rec.inst_regret += step.decision_probs[pi] * truth.gap(pi);
    }
    rec.hellinger_increment =
        expected_divergence(step.decision_probs, truth, step, cls, cfg.divergence);

    const double violation =
        rec.inst_regret - rec.dec_value - cfg.gamma * rec.hellinger_increment;
    trace.max_pathwise_violation = std::max(trace.max_pathwise_violation, violation);
    if (violation > 1e-6 &&
        (cfg.option == E2dOption::OptionI || cfg.option == E2dOption::Generalized)) {
      throw NumericFailureError("per-round regret decomposition violated");
    }

    SplitRng round_rng = root.split(static_cast<std::uint64_t>(t));
    rec.decision = sample_index(step.decision_probs, round_rng);
    const Sample obs = truth.outcome(rec.decision).sample(round_rng);
    rec.reward = obs.reward;

    if (step.estimate) {
      ledger_add(state, step.decision_probs, *step.estimate, truth);
      if (cfg.option == E2dOption::OptionII) {
        history.push_back(EstimateRound{step.decision_probs, *step.estimate});
      }
    } else {
      state.hellinger_ledger += rec.hellinger_increment;
    }
    aggregate_update(state, cls, rec.decision, obs);

    trace.cum_regret += rec.inst_regret;
    trace.est_h += rec.hellinger_increment;
    sum_dec += rec.dec_value;
    rec.cum_regret = trace.cum_regret;
    rec.cum_est = trace.est_h;
    trace.rounds.push_back(rec);
  }

  trace.reg_kl = cfg.rounds > 0 ? logloss_regret(state) : 0.0;
  trace.bound_rhs = sum_dec + cfg.gamma * trace.est_h;
  return trace;
}

// ---------------------------------------------------------------------------

void ContextualModelClass::validate() const {
  if (models.empty()) throw InvalidParamsError("contextual class is empty");
  const int contexts = models.front().num_contexts();
  const int decisions = models.front().slices.front().num_decisions();
  for (const auto& m : models) {
    if (m.num_contexts() != contexts) {
      throw InvalidParamsError("contextual models must share the context set");
    }
    for (const auto& slice : m.slices) {
      if (slice.num_decisions() != decisions) {
        throw InvalidParamsError("contextual models must share the decision space");
      }
    }
  }
  if (truth_index && (*truth_index < 0 || *truth_index >= num_models())) {
    throw InvalidParamsError("truth index out of range");
  }
}

ModelClass slice_class(const ContextualModelClass& cls, int context) {
  if (context < 0 || context >= cls.num_contexts()) {
    throw UnknownContextError("context index out of range");
  }
  ModelClass projected;
  for (const auto& m : cls.models) projected.models.push_back(m.slices[context]);
  return projected;
}

E2dStepResult contextual_e2d_step(int context, const ContextualModelClass& cls,
                                  const OracleState& state, double gamma,
                                  DivergenceKind div, double smoothing_alpha) {
  const ModelClass projected = slice_class(cls, context);
  E2dStepContext ctx;
  ctx.smoothing_alpha = smoothing_alpha;
  return e2d_step(E2dOption::OptionI, state, projected, gamma, div, ctx);
}

RegretTrace run_contextual_experiment(const ContextualModelClass& cls,
                                      int truth_index,
                                      const ExperimentConfig& cfg) {
  cfg.validate();
  cls.validate();
  if (truth_index < 0 || truth_index >= cls.num_models()) {
    throw InvalidParamsError("truth index out of range");
  }
  const ContextualModel& truth = cls.models[truth_index];

  OracleState state = make_oracle_state(cls.num_models());
  SplitRng root(cfg.seed);
  SplitRng context_rng = root.split(0x10c0);

  RegretTrace trace;
  trace.rounds.reserve(cfg.rounds);
  double sum_dec = 0.0;

  for (int t = 1; t <= cfg.rounds; ++t) {
    const int x = static_cast<int>(context_rng.next_below(cls.num_contexts()));
    E2dStepResult step = contextual_e2d_step(x, cls, state, cfg.gamma,
                                             cfg.divergence, cfg.smoothing_alpha);
    const Model& truth_slice = truth.slices[x];

    RoundRecord rec;
    rec.t = t;
    rec.dec_value = step.dec_value;
    for (int pi = 0; pi < cls.num_decisions(); ++pi) {
      rec.inst_regret += step.decision_probs[pi] * truth_slice.gap(pi);
    }
    for (int pi = 0; pi < cls.num_decisions(); ++pi) {
      const double p = step.decision_probs[pi];
      if (p == 0.0) continue;
      rec.hellinger_increment +=
          p * divergence(cfg.divergence, truth_slice.outcome(pi),
                         step.estimate->outcome(pi));
    }
    trace.max_pathwise_violation =
        std::max(trace.max_pathwise_violation,
                 rec.inst_regret - rec.dec_value -
                     cfg.gamma * rec.hellinger_increment);

    SplitRng round_rng = root.split(static_cast<std::uint64_t>(t));
    rec.decision = sample_index(step.decision_probs, round_rng);
    const Sample obs = truth_slice.outcome(rec.decision).sample(round_rng);
    rec.reward = obs.reward;

    state.hellinger_ledger += rec.hellinger_increment;
    std::vector<double> log_densities(cls.num_models());
    for (int i = 0; i < cls.num_models(); ++i) {
      log_densities[i] = cls.models[i].slices[x].outcome(rec.decision).log_density(obs);
    }
    aggregate_update_with(state, log_densities);

    trace.cum_regret += rec.inst_regret;
    trace.est_h += rec.hellinger_increment;
    sum_dec += rec.dec_value;
    rec.cum_regret = trace.cum_regret;
    rec.cum_est = trace.est_h;
    trace.rounds.push_back(rec);
  }

  trace.reg_kl = cfg.rounds > 0 ? logloss_regret(state) : 0.0;
  trace.bound_rhs = sum_dec + cfg.gamma * trace.est_h;
  return trace;
}

}  // namespace declab
