#pragma once

#include <vector>

#include "declab/divergence.hpp"
#include "declab/model.hpp"
#include "declab/simplex_lp.hpp"

namespace declab {

enum class DecMethod { LP, DualLP, IGW, PosteriorSampling, PCIGW, PCIGWBilinear };

/// Certifies an upper bound on the decision-estimation coefficient at scale
/// gamma: the witness distribution achieves objective <= value against every
/// model in the class (within solver tolerance).
struct DecCertificate {
  double gamma = 0.0;
  DivergenceKind divergence = DivergenceKind::HellingerSq;
  double value = 0.0;
  std::vector<double> witness;
  DecMethod method = DecMethod::LP;
};

/// Dual certificate: a prior over the class whose best response value lower
/// bounds the coefficient.
struct DecLowerWitness {
  std::vector<double> prior;
  double value = 0.0;
};

/// Game payoff matrix: entry (m, pi) is
///   f_M(pi_M) - f_M(pi) - gamma * div(M(pi), ref(pi)).
/// Throws UnsupportedDivergenceError if any entry is infinite.
DenseMatrix dec_payoff(const ModelClass& cls, const Model& ref, double gamma,
                       DivergenceKind div);

/// Same payoff with the divergence column replaced by its average over a
/// finite-support distribution of reference models.
DenseMatrix dec_payoff_randomized(const ModelClass& cls,
                                  const std::vector<Model>& nu_models,
                                  const std::vector<double>& nu_weights,
                                  double gamma, DivergenceKind div);

/// sup over class members of the witness's expected payoff.
double evaluate_witness(const DenseMatrix& payoff, const std::vector<double>& p);

/// Exact coefficient on a finite class: solves
///   min_{p in simplex} max_M <payoff_M, p>
/// as a linear program.
DecCertificate dec_lp(const ModelClass& cls, const Model& ref, double gamma,
                      DivergenceKind div);

/// Transposed program: max over priors of the best-response value.
DecLowerWitness dec_dual_lp(const ModelClass& cls, const Model& ref, double gamma,
                            DivergenceKind div);

/// Inverse gap weighting for mean vector fbar in [0,1]^A:
///   p(pi) = 1 / (lambda + 2 gamma (max fbar - fbar(pi))),
/// lambda in [1, A] found by bisection. Certificate value A / gamma under the
/// squared-mean divergence.
DecCertificate igw(const std::vector<double>& fbar, double gamma);

/// Pushforward of the optimal-decision map under a prior; value is the dual
/// objective of (prior, pushforward).
DecCertificate posterior_sampling_certificate(const ModelClass& cls,
                                              const std::vector<double>& prior,
                                              const Model& ref, double gamma,
                                              DivergenceKind div);

/// Coefficient against a randomized reference (finite-support nu).
DecCertificate dec_randomized(const ModelClass& cls,
                              const std::vector<Model>& nu_models,
                              const std::vector<double>& nu_weights, double gamma,
                              DivergenceKind div);

/// Minimax value and witness for an arbitrary payoff matrix (rows = max
/// player, columns = min player). Shared by dec_lp and the coarsened-class
/// step of the Bayesian algorithm.
DecCertificate minimax_over_columns(const DenseMatrix& payoff, double gamma,
                                    DivergenceKind div, DecMethod method);

}  // namespace declab
