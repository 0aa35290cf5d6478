#include "declab/bilinear.hpp"

#include <algorithm>
#include <cmath>

#include "declab/errors.hpp"

namespace declab {

namespace {

Eigen::VectorXd concat_factors(const Eigen::MatrixXd& m) {
  return Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
}

Eigen::MatrixXd basis_matrix(const BilinearEmbedding& emb, int layer, double eta,
                             const std::vector<int>& basis) {
  Eigen::MatrixXd c(emb.dim, static_cast<int>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    c.col(static_cast<int>(i)) = emb.reweighted(basis[i], layer, eta);
  }
  return c;
}

}  // namespace

double BilinearEmbedding::f_ref(int model) const {
  return concat_factors(x[model]).dot(theta_ref);
}

Eigen::VectorXd BilinearEmbedding::reweighted(int model, int layer,
                                              double eta) const {
  return x[model].col(layer) / std::sqrt(1.0 + eta * gap(model));
}

void BilinearEmbedding::validate() const {
  if (dim < 1 || horizon < 1 || x.empty() || x.size() != w.size()) {
    throw InvalidParamsError("embedding shape mismatch");
  }
  if (theta_ref.size() != dim * horizon) {
    throw InvalidParamsError("reward functional has wrong dimension");
  }
  if (ref_index < 0 || ref_index >= num_models()) {
    throw InvalidParamsError("reference index out of range");
  }
  if (w[ref_index].norm() > 1e-9) {
    throw InvalidParamsError("W(ref; ref) must vanish");
  }
  for (const auto& xm : x) {
    for (int h = 0; h < horizon; ++h) {
      if (xm.col(h).norm() > 1.0 + 1e-9) {
        throw InvalidParamsError("X factors must have norm at most 1");
      }
    }
  }
}

PlanningOracle enumeration_oracle(const BilinearEmbedding& emb) {
  return [&emb](const Eigen::VectorXd& theta) {
    int best = 0;
    double best_value = concat_factors(emb.x[0]).dot(theta);
    for (int m = 1; m < emb.num_models(); ++m) {
      const double value = concat_factors(emb.x[m]).dot(theta);
      if (value > best_value) {
        best_value = value;
        best = m;
      }
    }
    return best;
  };
}

int igw_argmax(const BilinearEmbedding& emb, const PlanningOracle& plan,
               const Eigen::VectorXd& theta, int layer, double eta, double r) {
  if (!(eta >= 1.0)) throw InvalidParamsError("igw_argmax requires eta >= 1");
  if (!(r > 0.0 && r < 1.0)) throw InvalidParamsError("scale r must lie in (0,1)");

  const int d = emb.dim;
  const int n_grid = static_cast<int>(
      std::ceil(std::log((4.0 / 3.0) * std::pow(r, -d)) / std::log(4.0 / 3.0)));

  const auto objective = [&](int m) {
    return std::abs(emb.x[m].col(layer).dot(theta)) /
           std::sqrt(1.0 + eta * emb.gap(m));
  };

  int best = emb.ref_index;
  double best_value = objective(best);
  double magnitude = 1.0;
  for (int i = 1; i <= n_grid; ++i) {
    magnitude *= 0.75;
    for (const double eps : {magnitude, -magnitude}) {
      Eigen::VectorXd tilt = eta * eps * eps * emb.theta_ref;
      tilt.segment(layer * d, d) += eps * theta;
      const int candidate = plan(tilt);
      const double value = objective(candidate);
      if (value > best_value) {
        best_value = value;
        best = candidate;
      }
    }
  }
  return best;
}

std::vector<int> igw_spanner(const BilinearEmbedding& emb,
                             const PlanningOracle& plan, int layer, double eta,
                             std::vector<int> init, double r) {
  const int d = emb.dim;
  if (static_cast<int>(init.size()) != d) {
    throw InvalidParamsError("spanner init must contain d models");
  }
  if (!(r > 0.0)) {
    Eigen::MatrixXd x_init(d, d);
    for (int i = 0; i < d; ++i) x_init.col(i) = emb.x[init[i]].col(layer);
    const double det = std::abs(x_init.fullPivLu().determinant());
    if (det <= 0.0) throw InvalidParamsError("spanner init is singular");
    r = std::min(0.5, std::pow(det, 1.0 / d));
  }

  const double sqrt2 = std::sqrt(2.0);
  const long cap =
      static_cast<long>(std::ceil(d * std::log(d / std::pow(r, d)) /
                                  std::log(sqrt2))) +
      d + 16;

  Eigen::MatrixXd c = basis_matrix(emb, layer, eta, init);
  long swaps = 0;
  bool improved = true;
  while (improved) {
    improved = false;
    for (int i = 0; i < d && !improved; ++i) {
      // Linear functional Y -> det(Y, C_{-i}) via column replacement.
      Eigen::VectorXd theta(d);
      Eigen::MatrixXd probe = c;
      for (int j = 0; j < d; ++j) {
        probe.col(i) = Eigen::VectorXd::Unit(d, j);
        theta[j] = probe.fullPivLu().determinant();
      }
      const double theta_norm = theta.norm();
      if (theta_norm == 0.0) continue;
      const int candidate =
          igw_argmax(emb, plan, theta / theta_norm, layer, eta, r);
      const Eigen::VectorXd y = emb.reweighted(candidate, layer, eta);
      const double det_cur = std::abs(c.fullPivLu().determinant());
      probe = c;
      probe.col(i) = y;
      const double det_new = std::abs(probe.fullPivLu().determinant());
      if (det_new >= sqrt2 * det_cur * (1.0 + 1e-12)) {
        c.col(i) = y;
        init[i] = candidate;
        improved = true;
        if (++swaps > cap) {
          throw NonconvergenceGuardError("spanner exceeded its swap budget");
        }
      }
    }
  }
  return init;
}

std::vector<int> greedy_volume_init(const BilinearEmbedding& emb, int layer) {
  const int d = emb.dim;
  std::vector<int> chosen;
  Eigen::MatrixXd basis(d, 0);
  for (int step = 0; step < d; ++step) {
    int best = -1;
    double best_vol = 0.0;
    for (int m = 0; m < emb.num_models(); ++m) {
      if (std::find(chosen.begin(), chosen.end(), m) != chosen.end()) continue;
      Eigen::MatrixXd trial(d, step + 1);
      if (step > 0) trial.leftCols(step) = basis;
      trial.col(step) = emb.x[m].col(layer);
      const double vol = std::sqrt(
          std::abs((trial.transpose() * trial).fullPivLu().determinant()));
      if (best < 0 || vol > best_vol) {
        best = m;
        best_vol = vol;
      }
    }
    if (best < 0 || best_vol <= 0.0) {
      throw InvalidParamsError("class does not span d dimensions at this layer");
    }
    chosen.push_back(best);
    Eigen::MatrixXd grown(d, step + 1);
    if (step > 0) grown.leftCols(step) = basis;
    grown.col(step) = emb.x[best].col(layer);
    basis = std::move(grown);
  }
  return chosen;
}

Eigen::VectorXd spanner_coefficients(const BilinearEmbedding& emb, int layer,
                                     double eta, const std::vector<int>& basis,
                                     int model) {
  const Eigen::MatrixXd c = basis_matrix(emb, layer, eta, basis);
  return c.fullPivLu().solve(emb.reweighted(model, layer, eta));
}

double design_test_value(const BilinearEmbedding& emb, int layer, double eta,
                         const std::vector<int>& basis) {
  const int d = emb.dim;
  Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(d, d);
  for (int idx : basis) {
    const Eigen::VectorXd y = emb.reweighted(idx, layer, eta);
    sigma += y * y.transpose() / static_cast<double>(basis.size());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sigma);
  Eigen::VectorXd inv_vals = eig.eigenvalues();
  for (int i = 0; i < d; ++i) {
    inv_vals[i] = inv_vals[i] > 1e-10 ? 1.0 / inv_vals[i] : 0.0;
  }
  const Eigen::MatrixXd pinv =
      eig.eigenvectors() * inv_vals.asDiagonal() * eig.eigenvectors().transpose();

  double worst = 0.0;
  for (int m = 0; m < emb.num_models(); ++m) {
    const Eigen::VectorXd y = emb.reweighted(m, layer, eta);
    worst = std::max(worst, y.dot(pinv * y));
  }
  return worst;
}

BilinearCertificate pcigw_bilinear(const BilinearEmbedding& emb,
                                   const PlanningOracle& plan, double gamma,
                                   double c_opt,
                                   const std::vector<std::vector<int>>& inits) {
  emb.validate();
  if (!(gamma > 0.0)) throw InvalidParamsError("gamma must be positive");
  const double h = emb.horizon;
  const double l2d = emb.l_bi * emb.l_bi * emb.dim;

  BilinearCertificate cert;
  cert.gamma = gamma;
  if (emb.on_policy) {
    cert.alpha = 0.0;
    cert.eta = gamma / (3.0 * h * h * h * c_opt * l2d);
    cert.value = 9.0 * h * h * h * c_opt * l2d / gamma;
  } else {
    const double threshold = 72.0 * h * h * h * h * c_opt * l2d;
    if (gamma < threshold) {
      throw GammaTooSmallError("off-policy certificate needs gamma >= 72 H^4 C L^2 d");
    }
    cert.eta = gamma / (6.0 * h * h * h * h * c_opt * l2d);
    cert.alpha = std::sqrt(18.0 * h * h * h * h * c_opt * l2d / gamma);
    cert.value = std::sqrt(threshold / gamma);
  }

  // Mix per-layer spanner designs with the reference model.
  std::vector<double> q(emb.num_models(), 0.0);
  for (int layer = 0; layer < emb.horizon; ++layer) {
    std::vector<int> init = layer < static_cast<int>(inits.size()) && !inits[layer].empty()
                                ? inits[layer]
                                : greedy_volume_init(emb, layer);
    const std::vector<int> design = igw_spanner(emb, plan, layer, cert.eta,
                                                std::move(init), 0.0);
    const double share = 1.0 / (2.0 * h * static_cast<double>(design.size()));
    for (int idx : design) q[idx] += share;
  }
  q[emb.ref_index] += 0.5;

  // Inverse gap weighting with the normalizer in [1/2, 1].
  const auto mass = [&](double lambda) {
    double total = 0.0;
    for (int m = 0; m < emb.num_models(); ++m) {
      if (q[m] > 0.0) total += q[m] / (lambda + cert.eta * emb.gap(m));
    }
    return total;
  };
  double lo = 0.5, hi = 1.0;
  for (int iter = 0; iter < 200 && hi - lo > 1e-14; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (mass(mid) >= 1.0 ? lo : hi) = mid;
  }
  cert.lambda = 0.5 * (lo + hi);

  double total = 0.0;
  for (int m = 0; m < emb.num_models(); ++m) {
    if (q[m] == 0.0) continue;
    cert.support.push_back(m);
    cert.weights.push_back(q[m] / (cert.lambda + cert.eta * emb.gap(m)));
    total += cert.weights.back();
  }
  for (double& w : cert.weights) w /= total;
  return cert;
}

}  // namespace declab
