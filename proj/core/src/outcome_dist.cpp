#include "declab/outcome_dist.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "declab/errors.hpp"

namespace declab {

namespace {
constexpr double kSimplexTol = 1e-12;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}  // namespace

OutcomeDist OutcomeDist::bernoulli(double mu) {
  if (!(mu >= 0.0 && mu <= 1.0)) {
    throw InvalidParamsError("bernoulli mean must lie in [0,1]");
  }
  OutcomeDist d;
  d.kind_ = DistKind::Bernoulli;
  d.mu_ = mu;
  return d;
}

OutcomeDist OutcomeDist::rademacher(double mu) {
  if (!(mu >= -1.0 && mu <= 1.0)) {
    throw InvalidParamsError("rademacher mean must lie in [-1,1]");
  }
  OutcomeDist d;
  d.kind_ = DistKind::Rademacher;
  d.mu_ = mu;
  return d;
}

OutcomeDist OutcomeDist::gaussian(double mean, double variance) {
  if (!(variance > 0.0) || !std::isfinite(mean) || !std::isfinite(variance)) {
    throw InvalidParamsError("gaussian requires finite mean and variance > 0");
  }
  OutcomeDist d;
  d.kind_ = DistKind::Gaussian;
  d.mu_ = mean;
  d.variance_ = variance;
  return d;
}

OutcomeDist OutcomeDist::categorical(std::vector<CategoricalAtom> support,
                                     std::vector<double> probs) {
  if (support.empty() || support.size() != probs.size()) {
    throw InvalidParamsError("categorical support/probs size mismatch");
  }
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw InvalidParamsError("categorical probs must be nonnegative");
    total += p;
  }
  if (std::abs(total - 1.0) > kSimplexTol) {
    throw InvalidParamsError("categorical probs must sum to 1 within 1e-12");
  }
  OutcomeDist d;
  d.kind_ = DistKind::Categorical;
  d.support_ = std::move(support);
  d.probs_ = std::move(probs);
  return d;
}

OutcomeDist OutcomeDist::point_mass(double reward) {
  OutcomeDist d;
  d.kind_ = DistKind::PointMass;
  d.mu_ = reward;
  return d;
}

double OutcomeDist::mean() const {
  switch (kind_) {
    case DistKind::Bernoulli:
    case DistKind::Rademacher:
    case DistKind::Gaussian:
    case DistKind::PointMass:
      return mu_;
    case DistKind::Categorical: {
      double m = 0.0;
      for (std::size_t i = 0; i < probs_.size(); ++i) {
        m += probs_[i] * support_[i].reward;
      }
      return m;
    }
  }
  return 0.0;
}

Sample OutcomeDist::sample(SplitRng& rng) const {
  switch (kind_) {
    case DistKind::Bernoulli: {
      const bool hit = rng.next_double() < mu_;
      return Sample{hit ? 1.0 : 0.0, hit ? 1 : 0, ""};
    }
    case DistKind::Rademacher: {
      const bool plus = rng.next_double() < 0.5 * (1.0 + mu_);
      return Sample{plus ? 1.0 : -1.0, plus ? 1 : 0, ""};
    }
    case DistKind::Gaussian:
      return Sample{mu_ + std::sqrt(variance_) * rng.next_gaussian(), -1, ""};
    case DistKind::Categorical: {
      const double u = rng.next_double();
      double cum = 0.0;
      for (std::size_t i = 0; i < probs_.size(); ++i) {
        cum += probs_[i];
        if (u < cum) {
          return Sample{support_[i].reward, static_cast<int>(i), support_[i].label};
        }
      }
      const std::size_t last = support_.size() - 1;
      return Sample{support_[last].reward, static_cast<int>(last), support_[last].label};
    }
    case DistKind::PointMass:
      return Sample{mu_, 0, ""};
  }
  return Sample{};
}

double OutcomeDist::log_density(const Sample& observed) const {
  switch (kind_) {
    case DistKind::Bernoulli: {
      if (observed.atom != 0 && observed.atom != 1) {
        throw UnsupportedPairError("bernoulli density needs a binary atom");
      }
      const double p = observed.atom == 1 ? mu_ : 1.0 - mu_;
      return p > 0.0 ? std::log(p) : kNegInf;
    }
    case DistKind::Rademacher: {
      if (observed.atom != 0 && observed.atom != 1) {
        throw UnsupportedPairError("rademacher density needs a binary atom");
      }
      const double p = observed.atom == 1 ? 0.5 * (1.0 + mu_) : 0.5 * (1.0 - mu_);
      return p > 0.0 ? std::log(p) : kNegInf;
    }
    case DistKind::Gaussian: {
      const double diff = observed.reward - mu_;
      return -0.5 * diff * diff / variance_ -
             0.5 * std::log(2.0 * 3.14159265358979323846 * variance_);
    }
    case DistKind::Categorical: {
      if (observed.atom < 0 || observed.atom >= static_cast<int>(probs_.size())) {
        throw UnsupportedPairError("categorical density needs an in-range atom");
      }
      const double p = probs_[static_cast<std::size_t>(observed.atom)];
      return p > 0.0 ? std::log(p) : kNegInf;
    }
    case DistKind::PointMass:
      return observed.reward == mu_ ? 0.0 : kNegInf;
  }
  return kNegInf;
}

bool OutcomeDist::compatible_support(const OutcomeDist& other) const {
  if (kind_ != other.kind_) return false;
  if (kind_ == DistKind::Categorical) return support_ == other.support_;
  return true;
}

}  // namespace declab
