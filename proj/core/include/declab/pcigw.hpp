#pragma once

#include <vector>

#include "declab/mdp.hpp"

namespace declab {

struct LfpResult {
  Policy policy;
  double ratio = 0.0;          // occupancy over gap-inflated denominator
  OccupancyMeasure occupancy;  // recovered from the transformed program
};

/// Maximizes d_h(s,a) / (2HSA + eta * (f_ref(opt) - f_ref(pi))) over
/// randomized policies. The occupancy-measure form is a linear-fractional
/// program solved as a linear program after the Charnes-Cooper change of
/// variables; the policy is recovered by row normalization. With
/// `delta_floor`, kernels and d1 are first mixed with uniform at 1e-6.
LfpResult lfp_policy(const TabularMdp& ref, int h, int s, int a, double eta,
                     bool delta_floor = false);

struct PolicyCover {
  std::vector<Policy> policies;  // deduplicated cover plus the greedy policy
  std::vector<double> weights;   // inverse-gap weights, sum to 1
  std::vector<double> gaps;      // f_ref(opt) - f_ref(pi) per cover policy
  double lambda = 0.0;           // normalizer, in [1, 2HSA]
  double reference_value = 0.0;  // f_ref(opt)
};

/// Inverse-gap-weighted policy cover: one ratio-maximizing policy per
/// (h,s,a), deduplicated, joined with the greedy policy, and weighted by
///   p(pi) = 1 / (lambda + eta * gap(pi)).
PolicyCover pcigw(const TabularMdp& ref, double eta, bool delta_floor = false);

/// Exploration objective of the cover against a test model:
///   E_{pi~p}[ f_M(pi_M) - f_M(pi) - gamma * Dh2(M(pi), ref(pi)) ]
/// with the exact trajectory Hellinger distance.
double cover_objective(const PolicyCover& cover, const TabularMdp& test_model,
                       const TabularMdp& ref, double gamma);

}  // namespace declab
