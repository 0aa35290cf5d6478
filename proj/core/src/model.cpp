#include "declab/model.hpp"

#include <algorithm>
#include <cmath>

#include "declab/errors.hpp"

namespace declab {

Model::Model(std::vector<OutcomeDist> outcomes) : outcomes_(std::move(outcomes)) {
  if (outcomes_.empty()) {
    throw InvalidParamsError("model needs at least one decision");
  }
  fvec_.reserve(outcomes_.size());
  for (const auto& dist : outcomes_) fvec_.push_back(dist.mean());
  opt_decision_ = 0;
  opt_value_ = fvec_[0];
  for (int pi = 1; pi < static_cast<int>(fvec_.size()); ++pi) {
    if (fvec_[pi] > opt_value_) {
      opt_value_ = fvec_[pi];
      opt_decision_ = pi;
    }
  }
}

std::pair<int, double> best_decision(const Model& model) {
  return {model.optimal_decision(), model.optimal_value()};
}

void ModelClass::validate() const {
  if (models.empty()) throw InvalidParamsError("model class is empty");
  const int decisions = models.front().num_decisions();
  for (const auto& m : models) {
    if (m.num_decisions() != decisions) {
      throw InvalidParamsError("models must share a decision space");
    }
  }
  if (truth_index && (*truth_index < 0 || *truth_index >= num_models())) {
    throw InvalidParamsError("truth index out of range");
  }
}

ModelClass localize(const ModelClass& cls, const Model& ref, double epsilon) {
  ModelClass out;
  out.density_ratio_bound = cls.density_ratio_bound;
  for (const auto& m : cls.models) {
    if (ref.optimal_value() >= m.optimal_value() - epsilon) {
      out.models.push_back(m);
    }
  }
  return out;
}

ModelClass localize_linf(const ModelClass& cls, const Model& ref, double epsilon) {
  ModelClass out;
  out.density_ratio_bound = cls.density_ratio_bound;
  for (const auto& m : cls.models) {
    bool keep = true;
    for (int pi = 0; pi < m.num_decisions(); ++pi) {
      if (std::abs(m.gap(pi) - ref.gap(pi)) > epsilon) {
        keep = false;
        break;
      }
    }
    if (keep) out.models.push_back(m);
  }
  return out;
}

namespace {

// Mixes the component distributions at one decision. Zero-weight components
// are skipped so degenerate weights reproduce a member exactly.
OutcomeDist mix_outcomes(const std::vector<const OutcomeDist*>& parts,
                         const std::vector<double>& weights) {
  std::vector<const OutcomeDist*> live;
  std::vector<double> live_w;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (weights[i] > 0.0) {
      live.push_back(parts[i]);
      live_w.push_back(weights[i]);
    }
  }
  if (live.empty()) throw InvalidParamsError("mixture weights are all zero");
  if (live.size() == 1) return *live[0];

  bool all_bernoulli = true, all_rademacher = true, any_gaussian = false;
  for (const auto* d : live) {
    all_bernoulli = all_bernoulli && d->kind() == DistKind::Bernoulli;
    all_rademacher = all_rademacher && d->kind() == DistKind::Rademacher;
    any_gaussian = any_gaussian || d->kind() == DistKind::Gaussian;
  }
  if (any_gaussian) {
    throw MixtureUnsupportedError("gaussian components have no closed-form mixture");
  }

  double mixed_mean = 0.0;
  for (std::size_t i = 0; i < live.size(); ++i) mixed_mean += live_w[i] * live[i]->mean();
  if (all_bernoulli) return OutcomeDist::bernoulli(std::min(1.0, std::max(0.0, mixed_mean)));
  if (all_rademacher) return OutcomeDist::rademacher(std::min(1.0, std::max(-1.0, mixed_mean)));

  // Categorical over the union support, first-seen atom order.
  std::vector<CategoricalAtom> atoms;
  std::vector<double> probs;
  auto add_mass = [&](const CategoricalAtom& atom, double mass) {
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      if (atoms[k] == atom) {
        probs[k] += mass;
        return;
      }
    }
    atoms.push_back(atom);
    probs.push_back(mass);
  };
  for (std::size_t i = 0; i < live.size(); ++i) {
    const OutcomeDist& d = *live[i];
    const double w = live_w[i];
    switch (d.kind()) {
      case DistKind::Bernoulli:
        add_mass({0.0, ""}, w * (1.0 - d.mu()));
        add_mass({1.0, ""}, w * d.mu());
        break;
      case DistKind::Rademacher:
        add_mass({-1.0, ""}, w * 0.5 * (1.0 - d.mu()));
        add_mass({1.0, ""}, w * 0.5 * (1.0 + d.mu()));
        break;
      case DistKind::Categorical:
        for (std::size_t k = 0; k < d.probs().size(); ++k) {
          add_mass(d.support()[k], w * d.probs()[k]);
        }
        break;
      case DistKind::PointMass:
        add_mass({d.mu(), ""}, w);
        break;
      case DistKind::Gaussian:
        break;  // excluded above
    }
  }
  // Renormalize away accumulated rounding before the simplex check.
  double total = 0.0;
  for (double p : probs) total += p;
  for (double& p : probs) p /= total;
  return OutcomeDist::categorical(std::move(atoms), std::move(probs));
}

}  // namespace

Model mixture(const ModelClass& cls, const std::vector<double>& weights) {
  if (weights.size() != static_cast<std::size_t>(cls.num_models())) {
    throw WeightDimError("mixture weights do not match class size");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw InvalidParamsError("mixture weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw InvalidParamsError("mixture weights must sum to 1 within 1e-12");
  }

  const int decisions = cls.num_decisions();
  std::vector<OutcomeDist> mixed;
  mixed.reserve(decisions);
  for (int pi = 0; pi < decisions; ++pi) {
    std::vector<const OutcomeDist*> parts;
    parts.reserve(cls.models.size());
    for (const auto& m : cls.models) parts.push_back(&m.outcome(pi));
    mixed.push_back(mix_outcomes(parts, weights));
  }
  return Model(std::move(mixed));
}

Model mixture_of(const ModelClass& cls, const std::vector<int>& indices,
                 const std::vector<double>& weights) {
  if (indices.size() != weights.size()) {
    throw WeightDimError("restricted mixture weights do not match index set");
  }
  std::vector<double> full(cls.num_models(), 0.0);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    full[indices[i]] += weights[i];
  }
  return mixture(cls, full);
}

}  // namespace declab
