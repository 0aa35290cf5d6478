#pragma once

#include <optional>
#include <vector>

#include "declab/outcome_dist.hpp"

namespace declab {

/// A model maps each decision index to an outcome distribution. The mean
/// reward vector and the least-index optimal decision are cached at
/// construction. Immutable after construction.
class Model {
 public:
  explicit Model(std::vector<OutcomeDist> outcomes);

  int num_decisions() const { return static_cast<int>(outcomes_.size()); }
  const OutcomeDist& outcome(int decision) const { return outcomes_[decision]; }
  const std::vector<OutcomeDist>& outcomes() const { return outcomes_; }

  /// Cached mean reward per decision.
  const std::vector<double>& mean_rewards() const { return fvec_; }
  double mean_reward(int decision) const { return fvec_[decision]; }

  int optimal_decision() const { return opt_decision_; }
  double optimal_value() const { return opt_value_; }

  /// Suboptimality gap of a decision under this model.
  double gap(int decision) const { return opt_value_ - fvec_[decision]; }

 private:
  std::vector<OutcomeDist> outcomes_;
  std::vector<double> fvec_;
  int opt_decision_ = 0;
  double opt_value_ = 0.0;
};

/// Least-index argmax of the mean reward vector and its value.
std::pair<int, double> best_decision(const Model& model);

/// A finite indexed family of models over a shared decision space.
struct ModelClass {
  std::vector<Model> models;
  std::optional<int> truth_index;
  std::optional<double> density_ratio_bound;

  int num_models() const { return static_cast<int>(models.size()); }
  int num_decisions() const {
    return models.empty() ? 0 : models.front().num_decisions();
  }

  /// Checks the shared decision count and the range of truth_index.
  void validate() const;
};

/// Subclass of models whose optimal value does not exceed the reference's
/// by more than epsilon; order preserved.
ModelClass localize(const ModelClass& cls, const Model& ref, double epsilon);

/// Subclass by the uniform-gap criterion: keep M when
/// |gap_M(pi) - gap_ref(pi)| <= epsilon for every decision pi.
ModelClass localize_linf(const ModelClass& cls, const Model& ref, double epsilon);

/// Convex-hull element: per-decision mixture of the class members under the
/// given simplex weights. Bernoulli (and Rademacher) components mix within
/// their kind; other discrete components mix into a categorical over the
/// union support. Gaussian components throw MixtureUnsupportedError.
Model mixture(const ModelClass& cls, const std::vector<double>& weights);

/// Mixture of a subset of the class (weights indexed as `indices`).
Model mixture_of(const ModelClass& cls, const std::vector<int>& indices,
                 const std::vector<double>& weights);

}  // namespace declab
