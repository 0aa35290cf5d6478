#pragma once

#include "declab/outcome_dist.hpp"

namespace declab {

/// Divergences measuring information between outcome distributions.
/// Bilinear is valid only where a bilinear embedding is supplied
/// (see bilinear.hpp); requesting it here throws.
enum class DivergenceKind { HellingerSq, KL, TV, SquaredMean, Bilinear };

/// Squared Hellinger distance, the integral of (sqrt(dP) - sqrt(dQ))^2.
/// Lies in [0, 2].
double hellinger_sq(const OutcomeDist& p, const OutcomeDist& q);

/// KL divergence; +inf when q misses mass that p carries.
double kl_divergence(const OutcomeDist& p, const OutcomeDist& q);

/// Total variation distance, in [0, 1].
double total_variation(const OutcomeDist& p, const OutcomeDist& q);

/// (mean(p) - mean(q))^2; defined for every pair of kinds.
double squared_mean_gap(const OutcomeDist& p, const OutcomeDist& q);

/// Dispatch on kind. Throws UnsupportedPairError when the pair is not
/// supported for the requested divergence.
double divergence(DivergenceKind kind, const OutcomeDist& p, const OutcomeDist& q);

const char* divergence_name(DivergenceKind kind);

}  // namespace declab
