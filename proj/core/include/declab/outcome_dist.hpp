#pragma once

#include <string>
#include <vector>

#include "declab/rng.hpp"

namespace declab {

enum class DistKind { Bernoulli, Rademacher, Gaussian, Categorical, PointMass };

/// One support point of a categorical outcome: a reward plus an opaque
/// observation label.
struct CategoricalAtom {
  double reward = 0.0;
  std::string label;

  friend bool operator==(const CategoricalAtom&, const CategoricalAtom&) = default;
};

/// A realized (reward, observation) pair. `atom` identifies the discrete
/// outcome (0/1 for Bernoulli and Rademacher, the support index for
/// categorical, 0 for point mass) and is -1 for continuous draws.
struct Sample {
  double reward = 0.0;
  int atom = -1;
  std::string label;
};

/// Parametric reward/observation distribution with exact mean, seeded
/// sampling, and closed-form divergences (see divergence.hpp).
/// Values are immutable and freely shareable.
class OutcomeDist {
 public:
  static OutcomeDist bernoulli(double mu);
  static OutcomeDist rademacher(double mu);
  static OutcomeDist gaussian(double mean, double variance);
  static OutcomeDist categorical(std::vector<CategoricalAtom> support,
                                 std::vector<double> probs);
  static OutcomeDist point_mass(double reward);

  DistKind kind() const { return kind_; }

  /// Exact expectation of the reward coordinate.
  double mean() const;

  /// Draws one (reward, observation); deterministic given the rng stream.
  Sample sample(SplitRng& rng) const;

  /// Log mass at a discrete atom, or log Lebesgue density for Gaussian.
  /// Returns -inf where the outcome has zero mass. Throws UnsupportedPair
  /// when the sample's shape cannot have come from this kind.
  double log_density(const Sample& observed) const;

  /// True if both are categorical over the identical support list, or both
  /// are the same non-categorical kind.
  bool compatible_support(const OutcomeDist& other) const;

  // Parameter accessors; meaningful subset depends on kind().
  double mu() const { return mu_; }
  double variance() const { return variance_; }
  const std::vector<CategoricalAtom>& support() const { return support_; }
  const std::vector<double>& probs() const { return probs_; }

 private:
  OutcomeDist() = default;

  DistKind kind_ = DistKind::PointMass;
  double mu_ = 0.0;        // Bernoulli/Rademacher mean, Gaussian mean, point reward
  double variance_ = 0.0;  // Gaussian only
  std::vector<CategoricalAtom> support_;
  std::vector<double> probs_;
};

}  // namespace declab
