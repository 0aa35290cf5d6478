#include <doctest.h>

#include <cmath>

#include "declab/bilinear.hpp"
#include "declab/dec.hpp"
#include "declab/errors.hpp"
#include "test_helpers.hpp"

using namespace declab;
using namespace declab::testing;

namespace {

// H = 1 embedding from raw vectors with externally supplied gaps:
// X(M) = the vector itself, W(M) = X(M) - X(ref).
BilinearEmbedding vector_embedding(const std::vector<Eigen::VectorXd>& xs,
                                   const Eigen::VectorXd& theta_ref,
                                   int ref_index) {
  BilinearEmbedding emb;
  emb.dim = static_cast<int>(xs.front().size());
  emb.horizon = 1;
  emb.ref_index = ref_index;
  emb.theta_ref = theta_ref;
  for (const auto& x : xs) {
    Eigen::MatrixXd xm(emb.dim, 1);
    xm.col(0) = x;
    emb.x.push_back(xm);
    Eigen::MatrixXd wm(emb.dim, 1);
    wm.col(0) = x - xs[ref_index];
    emb.w.push_back(wm);
  }
  return emb;
}

struct LinearBandit {
  std::vector<Eigen::VectorXd> features;   // decisions
  std::vector<Eigen::VectorXd> thetas;     // models
  std::vector<int> best;                   // pi_M per model
  ModelClass cls;                          // Rademacher outcome models
  BilinearEmbedding emb;
};

// Finite linear bandit: f_M(pi) = <theta_M, phi_pi>, Rademacher rewards,
// X(M) = phi_{pi_M}, W(M) = theta_M - theta_ref.
LinearBandit make_linear_bandit(SplitRng& rng, int dim, int n_decisions,
                                int n_models) {
  LinearBandit bandit;
  const auto random_in_ball = [&](double radius) {
    Eigen::VectorXd v(dim);
    double norm_sq = 0.0;
    for (int i = 0; i < dim; ++i) {
      v[i] = rng.next_gaussian();
      norm_sq += v[i] * v[i];
    }
    const double u = std::pow(rng.next_double(), 1.0 / dim);
    return Eigen::VectorXd(v * (radius * u / std::sqrt(norm_sq)));
  };
  for (int i = 0; i < dim; ++i) {
    bandit.features.push_back(Eigen::VectorXd::Unit(dim, i));
  }
  for (int k = dim; k < n_decisions; ++k) {
    bandit.features.push_back(random_in_ball(1.0));
  }
  for (int m = 0; m < n_models; ++m) {
    bandit.thetas.push_back(random_in_ball(1.0));
  }

  for (int m = 0; m < n_models; ++m) {
    int best = 0;
    double best_value = bandit.thetas[m].dot(bandit.features[0]);
    std::vector<OutcomeDist> outcomes;
    for (int pi = 0; pi < n_decisions; ++pi) {
      const double f = bandit.thetas[m].dot(bandit.features[pi]);
      outcomes.push_back(OutcomeDist::rademacher(f));
      if (f > best_value) {
        best_value = f;
        best = pi;
      }
    }
    bandit.best.push_back(best);
    bandit.cls.models.emplace_back(std::move(outcomes));
  }

  bandit.emb.dim = dim;
  bandit.emb.horizon = 1;
  bandit.emb.ref_index = 0;
  bandit.emb.l_bi = 2.0;  // |f - r| <= 2 for Rademacher rewards
  bandit.emb.on_policy = true;
  bandit.emb.theta_ref = bandit.thetas[0];
  for (int m = 0; m < n_models; ++m) {
    Eigen::MatrixXd xm(dim, 1);
    xm.col(0) = bandit.features[bandit.best[m]];
    bandit.emb.x.push_back(xm);
    Eigen::MatrixXd wm(dim, 1);
    wm.col(0) = bandit.thetas[m] - bandit.thetas[0];
    bandit.emb.w.push_back(wm);
  }
  return bandit;
}

}  // namespace

TEST_CASE("embedding validation") {
  std::vector<Eigen::VectorXd> xs{Eigen::VectorXd::Unit(2, 0),
                                  Eigen::VectorXd::Unit(2, 1)};
  BilinearEmbedding emb = vector_embedding(xs, Eigen::VectorXd::Zero(2), 0);
  emb.validate();

  SUBCASE("nonvanishing reference residual is rejected") {
    emb.w[0].col(0) = Eigen::VectorXd::Unit(2, 0);
    CHECK_THROWS_AS(emb.validate(), InvalidParamsError);
  }
  SUBCASE("oversized factors are rejected") {
    emb.x[1].col(0) = 3.0 * Eigen::VectorXd::Unit(2, 1);
    CHECK_THROWS_AS(emb.validate(), InvalidParamsError);
  }
}

TEST_CASE("grid argmax with zero gaps reduces to the largest projection") {
  std::vector<Eigen::VectorXd> xs;
  SplitRng rng(301);
  for (int i = 0; i < 12; ++i) {
    Eigen::VectorXd v(3);
    for (int j = 0; j < 3; ++j) v[j] = rng.next_gaussian();
    v /= std::max(1.0, v.norm());
    xs.push_back(v);
  }
  const BilinearEmbedding emb =
      vector_embedding(xs, Eigen::VectorXd::Zero(3), 0);
  const PlanningOracle plan = enumeration_oracle(emb);
  Eigen::VectorXd theta(3);
  theta << 0.6, -0.3, 0.74;
  theta.normalize();
  const int found = igw_argmax(emb, plan, theta, 0, 1.0, 0.25);
  double best = 0.0;
  for (const auto& x : xs) best = std::max(best, std::abs(x.dot(theta)));
  CHECK(std::abs(xs[found].dot(theta)) == doctest::Approx(best).epsilon(1e-12));
}

TEST_CASE("grid argmax stays within a constant of the exact maximum") {
  SplitRng rng(307);
  for (int trial = 0; trial < 20; ++trial) {
    const LinearBandit bandit = make_linear_bandit(rng, 3, 10, 15);
    const PlanningOracle plan = enumeration_oracle(bandit.emb);
    Eigen::VectorXd theta(3);
    for (int j = 0; j < 3; ++j) theta[j] = rng.next_gaussian();
    theta.normalize();
    const double eta = 1.0 + 4.0 * rng.next_double();
    const int found = igw_argmax(bandit.emb, plan, theta, 0, eta, 0.2);
    const auto objective = [&](int m) {
      return std::abs(bandit.emb.x[m].col(0).dot(theta)) /
             std::sqrt(1.0 + eta * bandit.emb.gap(m));
    };
    double exact = 0.0;
    for (int m = 0; m < bandit.emb.num_models(); ++m) {
      exact = std::max(exact, objective(m));
    }
    CHECK(objective(found) >= 0.25 * exact - 1e-12);
  }
}

TEST_CASE("spanner on the documented three-vector instance") {
  std::vector<Eigen::VectorXd> xs(3);
  xs[0] = Eigen::VectorXd::Unit(2, 0);
  xs[1] = Eigen::VectorXd::Unit(2, 1);
  xs[2] = Eigen::VectorXd(2);
  xs[2] << 0.5, 0.5;
  const BilinearEmbedding emb =
      vector_embedding(xs, Eigen::VectorXd::Zero(2), 0);
  const PlanningOracle plan = enumeration_oracle(emb);
  const std::vector<int> basis = igw_spanner(emb, plan, 0, 1.0, {0, 1}, 0.5);
  CHECK(basis == std::vector<int>{0, 1});
  const Eigen::VectorXd coef = spanner_coefficients(emb, 0, 1.0, basis, 2);
  CHECK(coef[0] == doctest::Approx(0.5));
  CHECK(coef[1] == doctest::Approx(0.5));
}

TEST_CASE("orthonormal classes keep their init") {
  std::vector<Eigen::VectorXd> xs;
  for (int i = 0; i < 4; ++i) xs.push_back(Eigen::VectorXd::Unit(4, i));
  const BilinearEmbedding emb =
      vector_embedding(xs, Eigen::VectorXd::Zero(4), 0);
  const std::vector<int> basis =
      igw_spanner(emb, enumeration_oracle(emb), 0, 1.0, {0, 1, 2, 3}, 0.9);
  CHECK(basis == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("random classes get 2-approximate spanners and bounded designs") {
  SplitRng rng(311);
  for (int trial = 0; trial < 15; ++trial) {
    const int dim = 2 + static_cast<int>(rng.next_below(4));
    const LinearBandit bandit =
        make_linear_bandit(rng, dim, dim + 12, dim + 20);
    const PlanningOracle plan = enumeration_oracle(bandit.emb);
    const double eta = trial % 2 == 0 ? 1.0 : 10.0;
    const std::vector<int> init = greedy_volume_init(bandit.emb, 0);
    const std::vector<int> basis = igw_spanner(bandit.emb, plan, 0, eta, init, 0.0);

    for (int m = 0; m < bandit.emb.num_models(); ++m) {
      const Eigen::VectorXd coef =
          spanner_coefficients(bandit.emb, 0, eta, basis, m);
      for (int i = 0; i < dim; ++i) CHECK(std::abs(coef[i]) <= 2.0 + 1e-6);
    }
    CHECK(design_test_value(bandit.emb, 0, eta, basis) <=
          2.0 * dim * dim + 1e-6);
  }
}

TEST_CASE("bilinear cover certificate") {
  SplitRng rng(313);
  const int dim = 2;
  const LinearBandit bandit = make_linear_bandit(rng, dim, 8, 12);
  const PlanningOracle plan = enumeration_oracle(bandit.emb);
  const double c_opt = 2.0 * dim;  // spanner designs are 2d-approximate
  const double l2d = bandit.emb.l_bi * bandit.emb.l_bi * dim;
  const double gamma = 4.0 * 3.0 * c_opt * l2d;  // keeps eta >= 1

  const BilinearCertificate cert = pcigw_bilinear(bandit.emb, plan, gamma, c_opt);

  CHECK(cert.lambda >= 0.5 - 1e-12);
  CHECK(cert.lambda <= 1.0 + 1e-12);
  CHECK(cert.alpha == doctest::Approx(0.0));
  CHECK(cert.value == doctest::Approx(9.0 * c_opt * l2d / gamma));
  double total = 0.0;
  for (double w : cert.weights) total += w;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));

  // Push the model weights forward onto decisions and evaluate the true
  // minimax objective against every class member.
  std::vector<double> p(bandit.features.size(), 0.0);
  for (std::size_t k = 0; k < cert.support.size(); ++k) {
    p[bandit.best[cert.support[k]]] += cert.weights[k];
  }
  const DenseMatrix payoff = dec_payoff(bandit.cls, bandit.cls.models[0], gamma,
                                        DivergenceKind::HellingerSq);
  CHECK(evaluate_witness(payoff, p) <= cert.value + 1e-6);

  SUBCASE("squared-mean divergence is the bilinear divergence here") {
    const DenseMatrix sq_payoff = dec_payoff(
        bandit.cls, bandit.cls.models[0], gamma, DivergenceKind::SquaredMean);
    CHECK(evaluate_witness(sq_payoff, p) <= cert.value + 1e-6);
  }
}

TEST_CASE("off-policy certificates enforce the gamma threshold") {
  SplitRng rng(317);
  LinearBandit bandit = make_linear_bandit(rng, 2, 6, 8);
  bandit.emb.on_policy = false;
  const PlanningOracle plan = enumeration_oracle(bandit.emb);
  const double c_opt = 4.0;
  const double l2d = bandit.emb.l_bi * bandit.emb.l_bi * 2.0;
  const double threshold = 72.0 * c_opt * l2d;
  CHECK_THROWS_AS(pcigw_bilinear(bandit.emb, plan, 0.5 * threshold, c_opt),
                  GammaTooSmallError);
  const BilinearCertificate cert =
      pcigw_bilinear(bandit.emb, plan, 4.0 * threshold, c_opt);
  CHECK(cert.alpha > 0.0);
  CHECK(cert.value == doctest::Approx(std::sqrt(threshold / (4.0 * threshold))));
}
