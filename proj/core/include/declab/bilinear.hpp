#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace declab {

/// Bilinear structure of a finite model class relative to a reference
/// member: per-layer factors X_h(M; ref) and W_h(M; ref) with
/// W(ref; ref) = 0, plus a reward functional theta_ref satisfying
/// f_ref(pi_M) = <X(M; ref), theta_ref> over the concatenated factors.
struct BilinearEmbedding {
  int dim = 0;      // d
  int horizon = 1;  // H
  int ref_index = 0;
  double l_bi = 1.0;  // bound on the estimation functional
  bool on_policy = true;

  std::vector<Eigen::MatrixXd> x;  // per model, d x H (column h = X_h)
  std::vector<Eigen::MatrixXd> w;  // per model, d x H
  Eigen::VectorXd theta_ref;       // dim d*H

  int num_models() const { return static_cast<int>(x.size()); }

  /// f_ref(pi_M) via the reward functional.
  double f_ref(int model) const;

  /// f_ref(pi_ref) - f_ref(pi_M); the reference has gap zero.
  double gap(int model) const { return f_ref(ref_index) - f_ref(model); }

  /// Reweighted factor X_h(M) / sqrt(1 + eta * gap(M)).
  Eigen::VectorXd reweighted(int model, int layer, double eta) const;

  /// Checks W(ref; ref) = 0 and the unit bound on every X_h.
  void validate() const;
};

/// Linear optimization over the class: returns argmax_M <X(M; ref), theta>
/// for theta of dimension d*H.
using PlanningOracle = std::function<int(const Eigen::VectorXd&)>;

/// Exhaustive oracle over the embedded class.
PlanningOracle enumeration_oracle(const BilinearEmbedding& emb);

/// Approximately maximizes |<X_h(M), theta>| / sqrt(1 + eta * gap(M)) by
/// querying the planning oracle on a signed geometric grid of tilts
///   theta_tilde = eps (theta (x) e_h) + eta eps^2 theta_ref,
/// with grid size ceil(log_{4/3}((4/3) r^-d)) per sign. Requires eta >= 1.
int igw_argmax(const BilinearEmbedding& emb, const PlanningOracle& plan,
               const Eigen::VectorXd& theta, int layer, double eta, double r);

/// Barycentric spanner for the reweighted layer-h factors via
/// determinant-improving swaps (factor sqrt(2)); the initial collection must
/// have |det X| >= r^d. Returns the final d model indices; uniform over them
/// is a 2d-approximate optimal design.
std::vector<int> igw_spanner(const BilinearEmbedding& emb,
                             const PlanningOracle& plan, int layer, double eta,
                             std::vector<int> init, double r);

/// Greedy volume-maximizing subset of the layer's X factors, for callers
/// without a certified initial collection.
std::vector<int> greedy_volume_init(const BilinearEmbedding& emb, int layer);

/// Coefficients expressing member `model` in the spanner basis.
Eigen::VectorXd spanner_coefficients(const BilinearEmbedding& emb, int layer,
                                     double eta, const std::vector<int>& basis,
                                     int model);

/// Optimal-design test value sup_M <Sigma^+ Y(M), Y(M)> for the uniform
/// design over `basis` (pseudoinverse by eigendecomposition, cutoff 1e-10).
double design_test_value(const BilinearEmbedding& emb, int layer, double eta,
                         const std::vector<int>& basis);

struct BilinearCertificate {
  std::vector<int> support;      // model indices carrying weight
  std::vector<double> weights;   // matching distribution, sums to 1
  double lambda = 0.0;           // normalizer, in [1/2, 1]
  double eta = 0.0;
  double alpha = 0.0;            // per-layer forced-exploration rate
  double gamma = 0.0;
  double value = 0.0;            // certified objective bound
};

/// Exploration distribution over (mixed) optimal policies of class members:
/// per-layer spanner designs mixed with the reference, then inverse gap
/// weighting with lambda in [1/2, 1]. On-policy value 9 H^3 C L^2 d / gamma;
/// off-policy sqrt(72 H^4 C L^2 d / gamma) with a gamma threshold.
BilinearCertificate pcigw_bilinear(const BilinearEmbedding& emb,
                                   const PlanningOracle& plan, double gamma,
                                   double c_opt,
                                   const std::vector<std::vector<int>>& inits = {});

}  // namespace declab
