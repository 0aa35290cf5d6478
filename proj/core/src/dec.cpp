#include "declab/dec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "declab/errors.hpp"

namespace declab {

namespace {

void check_finite(const DenseMatrix& payoff) {
  for (int i = 0; i < payoff.rows(); ++i) {
    for (int j = 0; j < payoff.cols(); ++j) {
      if (!std::isfinite(payoff.at(i, j))) {
        throw UnsupportedDivergenceError(
            "infinite divergence entry makes a model constraint vacuous");
      }
    }
  }
}

}  // namespace

DenseMatrix dec_payoff(const ModelClass& cls, const Model& ref, double gamma,
                       DivergenceKind div) {
  const int n = cls.num_models();
  const int a = cls.num_decisions();
  DenseMatrix payoff(n, a);
  for (int m = 0; m < n; ++m) {
    const Model& model = cls.models[m];
    for (int pi = 0; pi < a; ++pi) {
      payoff.at(m, pi) =
          model.gap(pi) - gamma * divergence(div, model.outcome(pi), ref.outcome(pi));
    }
  }
  check_finite(payoff);
  return payoff;
}

DenseMatrix dec_payoff_randomized(const ModelClass& cls,
                                  const std::vector<Model>& nu_models,
                                  const std::vector<double>& nu_weights,
                                  double gamma, DivergenceKind div) {
  if (nu_models.size() != nu_weights.size() || nu_models.empty()) {
    throw InvalidParamsError("randomized reference needs matching models/weights");
  }
  const int n = cls.num_models();
  const int a = cls.num_decisions();
  DenseMatrix payoff(n, a);
  for (int m = 0; m < n; ++m) {
    const Model& model = cls.models[m];
    for (int pi = 0; pi < a; ++pi) {
      double avg_div = 0.0;
      for (std::size_t j = 0; j < nu_models.size(); ++j) {
        if (nu_weights[j] == 0.0) continue;
        avg_div += nu_weights[j] *
                   divergence(div, model.outcome(pi), nu_models[j].outcome(pi));
      }
      payoff.at(m, pi) = model.gap(pi) - gamma * avg_div;
    }
  }
  check_finite(payoff);
  return payoff;
}

double evaluate_witness(const DenseMatrix& payoff, const std::vector<double>& p) {
  double worst = -std::numeric_limits<double>::infinity();
  for (int m = 0; m < payoff.rows(); ++m) {
    double v = 0.0;
    for (int pi = 0; pi < payoff.cols(); ++pi) v += payoff.at(m, pi) * p[pi];
    worst = std::max(worst, v);
  }
  return worst;
}

DecCertificate minimax_over_columns(const DenseMatrix& payoff, double gamma,
                                    DivergenceKind div, DecMethod method) {
  const int n = payoff.rows();
  const int a = payoff.cols();
  // Variables: p(0..a-1), t+, t-, slack per model row.
  //   <payoff_m, p> - t+ + t- + s_m = 0     for each m
  //   sum_pi p(pi) = 1
  // minimized objective: t+ - t-.
  const int vars = a + 2 + n;
  DenseMatrix lp(n + 1, vars);
  std::vector<double> rhs(n + 1, 0.0), cost(vars, 0.0);
  for (int m = 0; m < n; ++m) {
    for (int pi = 0; pi < a; ++pi) lp.at(m, pi) = payoff.at(m, pi);
    lp.at(m, a) = -1.0;
    lp.at(m, a + 1) = 1.0;
    lp.at(m, a + 2 + m) = 1.0;
  }
  for (int pi = 0; pi < a; ++pi) lp.at(n, pi) = 1.0;
  rhs[n] = 1.0;
  cost[a] = 1.0;
  cost[a + 1] = -1.0;

  const LpResult sol = solve_equality_lp(lp, rhs, cost);
  DecCertificate cert;
  cert.gamma = gamma;
  cert.divergence = div;
  cert.method = method;
  cert.value = sol.value;
  cert.witness.assign(sol.x.begin(), sol.x.begin() + a);
  return cert;
}

DecCertificate dec_lp(const ModelClass& cls, const Model& ref, double gamma,
                      DivergenceKind div) {
  if (!(gamma > 0.0)) throw InvalidParamsError("gamma must be positive");
  cls.validate();
  return minimax_over_columns(dec_payoff(cls, ref, gamma, div), gamma, div,
                              DecMethod::LP);
}

DecLowerWitness dec_dual_lp(const ModelClass& cls, const Model& ref, double gamma,
                            DivergenceKind div) {
  if (!(gamma > 0.0)) throw InvalidParamsError("gamma must be positive");
  cls.validate();
  const DenseMatrix payoff = dec_payoff(cls, ref, gamma, div);
  const int n = payoff.rows();
  const int a = payoff.cols();
  // max_{mu in simplex} min_pi <payoff(., pi), mu>, written as
  //   <payoff(., pi), mu> - v+ + v- - s_pi = 0  for each pi
  //   sum mu = 1,  minimize -(v+ - v-).
  const int vars = n + 2 + a;
  DenseMatrix lp(a + 1, vars);
  std::vector<double> rhs(a + 1, 0.0), cost(vars, 0.0);
  for (int pi = 0; pi < a; ++pi) {
    for (int m = 0; m < n; ++m) lp.at(pi, m) = payoff.at(m, pi);
    lp.at(pi, n) = -1.0;
    lp.at(pi, n + 1) = 1.0;
    lp.at(pi, n + 2 + pi) = -1.0;
  }
  for (int m = 0; m < n; ++m) lp.at(a, m) = 1.0;
  rhs[a] = 1.0;
  cost[n] = -1.0;
  cost[n + 1] = 1.0;

  const LpResult sol = solve_equality_lp(lp, rhs, cost);
  DecLowerWitness witness;
  witness.value = -sol.value;
  witness.prior.assign(sol.x.begin(), sol.x.begin() + n);
  return witness;
}

DecCertificate igw(const std::vector<double>& fbar, double gamma) {
  if (!(gamma > 0.0)) throw InvalidParamsError("gamma must be positive");
  if (fbar.empty()) throw InvalidParamsError("igw needs at least one decision");
  const int a = static_cast<int>(fbar.size());
  const double best = *std::max_element(fbar.begin(), fbar.end());

  const auto mass = [&](double lambda) {
    double total = 0.0;
    for (double f : fbar) total += 1.0 / (lambda + 2.0 * gamma * (best - f));
    return total;
  };

  // The normalizer is the unique root of mass(lambda) = 1 in [1, A]; the map
  // is strictly decreasing so plain bisection converges.
  double lo = 1.0, hi = static_cast<double>(a);
  for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (mass(mid) >= 1.0 ? lo : hi) = mid;
  }
  const double lambda = 0.5 * (lo + hi);

  DecCertificate cert;
  cert.gamma = gamma;
  cert.divergence = DivergenceKind::SquaredMean;
  cert.method = DecMethod::IGW;
  cert.value = static_cast<double>(a) / gamma;
  cert.witness.resize(a);
  double total = 0.0;
  for (int pi = 0; pi < a; ++pi) {
    cert.witness[pi] = 1.0 / (lambda + 2.0 * gamma * (best - fbar[pi]));
    total += cert.witness[pi];
  }
  for (double& w : cert.witness) w /= total;
  return cert;
}

DecCertificate posterior_sampling_certificate(const ModelClass& cls,
                                              const std::vector<double>& prior,
                                              const Model& ref, double gamma,
                                              DivergenceKind div) {
  cls.validate();
  if (prior.size() != static_cast<std::size_t>(cls.num_models())) {
    throw WeightDimError("prior does not match class size");
  }
  const int a = cls.num_decisions();
  DecCertificate cert;
  cert.gamma = gamma;
  cert.divergence = div;
  cert.method = DecMethod::PosteriorSampling;
  cert.witness.assign(a, 0.0);
  for (int m = 0; m < cls.num_models(); ++m) {
    cert.witness[cls.models[m].optimal_decision()] += prior[m];
  }
  const DenseMatrix payoff = dec_payoff(cls, ref, gamma, div);
  double value = 0.0;
  for (int m = 0; m < cls.num_models(); ++m) {
    if (prior[m] == 0.0) continue;
    double row = 0.0;
    for (int pi = 0; pi < a; ++pi) row += payoff.at(m, pi) * cert.witness[pi];
    value += prior[m] * row;
  }
  cert.value = value;
  return cert;
}

DecCertificate dec_randomized(const ModelClass& cls,
                              const std::vector<Model>& nu_models,
                              const std::vector<double>& nu_weights, double gamma,
                              DivergenceKind div) {
  if (!(gamma > 0.0)) throw InvalidParamsError("gamma must be positive");
  cls.validate();
  return minimax_over_columns(
      dec_payoff_randomized(cls, nu_models, nu_weights, gamma, div), gamma, div,
      DecMethod::LP);
}

}  // namespace declab
