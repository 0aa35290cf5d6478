#include "declab/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "declab/errors.hpp"

namespace declab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sq(double x) { return x * x; }

// Termwise formulas over a pair of discrete mass vectors.
double hellinger_sq_masses(const std::vector<double>& p, const std::vector<double>& q) {
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    total += sq(std::sqrt(p[i]) - std::sqrt(q[i]));
  }
  return total;
}

double kl_masses(const std::vector<double>& p, const std::vector<double>& q) {
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return kInf;  // P not absolutely continuous w.r.t. Q
    total += p[i] * std::log(p[i] / q[i]);
  }
  return total;
}

double tv_masses(const std::vector<double>& p, const std::vector<double>& q) {
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    total += std::abs(p[i] - q[i]);
  }
  return 0.5 * total;
}

std::vector<double> binary_masses(const OutcomeDist& d) {
  // Success probability of the "atom == 1" outcome.
  const double p1 = d.kind() == DistKind::Bernoulli ? d.mu() : 0.5 * (1.0 + d.mu());
  return {1.0 - p1, p1};
}

double gaussian_cdf(double x, double mean, double variance) {
  return 0.5 * std::erfc(-(x - mean) / std::sqrt(2.0 * variance));
}

// TV between two Gaussians via the density crossing points (roots of a
// quadratic in x); exact for any variances.
double tv_gaussian(const OutcomeDist& p, const OutcomeDist& q) {
  const double m1 = p.mu(), v1 = p.variance();
  const double m2 = q.mu(), v2 = q.variance();
  if (m1 == m2 && v1 == v2) return 0.0;
  const double a = v2 - v1;
  const double b = -2.0 * (v2 * m1 - v1 * m2);
  const double c = v2 * m1 * m1 - v1 * m2 * m2 - v1 * v2 * std::log(v2 / v1);
  if (a == 0.0) {
    // Equal variances: a single crossing at the midpoint.
    const double s = std::sqrt(v1);
    return std::erf(std::abs(m1 - m2) / (2.0 * s * std::sqrt(2.0)));
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc <= 0.0) return 0.0;  // densities never cross: distributions equal
  const double root = std::sqrt(disc);
  const double x1 = (-b - root) / (2.0 * a);
  const double x2 = (-b + root) / (2.0 * a);
  const double lo = std::min(x1, x2), hi = std::max(x1, x2);
  const double mass_p = gaussian_cdf(hi, m1, v1) - gaussian_cdf(lo, m1, v1);
  const double mass_q = gaussian_cdf(hi, m2, v2) - gaussian_cdf(lo, m2, v2);
  return std::abs(mass_p - mass_q);
}

void require_same_kind(const OutcomeDist& p, const OutcomeDist& q) {
  if (!p.compatible_support(q)) {
    throw UnsupportedPairError("divergence requires matching kinds and supports");
  }
}

}  // namespace

double hellinger_sq(const OutcomeDist& p, const OutcomeDist& q) {
  require_same_kind(p, q);
  switch (p.kind()) {
    case DistKind::Bernoulli:
    case DistKind::Rademacher:
      return hellinger_sq_masses(binary_masses(p), binary_masses(q));
    case DistKind::Gaussian: {
      const double v1 = p.variance(), v2 = q.variance();
      const double affinity = std::sqrt(2.0 * std::sqrt(v1 * v2) / (v1 + v2)) *
                              std::exp(-sq(p.mu() - q.mu()) / (4.0 * (v1 + v2)));
      return 2.0 * (1.0 - affinity);
    }
    case DistKind::Categorical:
      return hellinger_sq_masses(p.probs(), q.probs());
    case DistKind::PointMass:
      return p.mu() == q.mu() ? 0.0 : 2.0;
  }
  return 0.0;
}

double kl_divergence(const OutcomeDist& p, const OutcomeDist& q) {
  require_same_kind(p, q);
  switch (p.kind()) {
    case DistKind::Bernoulli:
    case DistKind::Rademacher:
      return kl_masses(binary_masses(p), binary_masses(q));
    case DistKind::Gaussian: {
      const double v1 = p.variance(), v2 = q.variance();
      return 0.5 * std::log(v2 / v1) + (v1 + sq(p.mu() - q.mu())) / (2.0 * v2) - 0.5;
    }
    case DistKind::Categorical:
      return kl_masses(p.probs(), q.probs());
    case DistKind::PointMass:
      return p.mu() == q.mu() ? 0.0 : kInf;
  }
  return 0.0;
}

double total_variation(const OutcomeDist& p, const OutcomeDist& q) {
  require_same_kind(p, q);
  switch (p.kind()) {
    case DistKind::Bernoulli:
    case DistKind::Rademacher:
      return tv_masses(binary_masses(p), binary_masses(q));
    case DistKind::Gaussian:
      return tv_gaussian(p, q);
    case DistKind::Categorical:
      return tv_masses(p.probs(), q.probs());
    case DistKind::PointMass:
      return p.mu() == q.mu() ? 0.0 : 1.0;
  }
  return 0.0;
}

double squared_mean_gap(const OutcomeDist& p, const OutcomeDist& q) {
  return sq(p.mean() - q.mean());
}

double divergence(DivergenceKind kind, const OutcomeDist& p, const OutcomeDist& q) {
  switch (kind) {
    case DivergenceKind::HellingerSq:
      return hellinger_sq(p, q);
    case DivergenceKind::KL:
      return kl_divergence(p, q);
    case DivergenceKind::TV:
      return total_variation(p, q);
    case DivergenceKind::SquaredMean:
      return squared_mean_gap(p, q);
    case DivergenceKind::Bilinear:
      throw UnsupportedPairError("bilinear divergence requires an embedding");
  }
  return 0.0;
}

const char* divergence_name(DivergenceKind kind) {
  switch (kind) {
    case DivergenceKind::HellingerSq: return "hellinger";
    case DivergenceKind::KL: return "kl";
    case DivergenceKind::TV: return "tv";
    case DivergenceKind::SquaredMean: return "squared";
    case DivergenceKind::Bilinear: return "bilinear";
  }
  return "unknown";
}

}  // namespace declab
