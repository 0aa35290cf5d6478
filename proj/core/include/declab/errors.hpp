#pragma once

#include <stdexcept>
#include <string>

namespace declab {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Divergence requested for a pair of distributions of different kinds
/// (or categoricals over mismatched supports).
class UnsupportedPairError : public Error {
 public:
  using Error::Error;
};

/// A divergence column contains +inf entries, which would make model
/// constraints vacuous inside the minimax program.
class UnsupportedDivergenceError : public Error {
 public:
  using Error::Error;
};

/// Mixture requested over components with no closed-form mixture
/// (Gaussian components).
class MixtureUnsupportedError : public Error {
 public:
  using Error::Error;
};

class WeightDimError : public Error {
 public:
  using Error::Error;
};

class EmptyActiveSetError : public Error {
 public:
  using Error::Error;
};

/// Every model in the class assigns zero mass to an observation.
class AllZeroLikelihoodError : public Error {
 public:
  using Error::Error;
};

class UnknownContextError : public Error {
 public:
  using Error::Error;
};

class InvalidParamsError : public Error {
 public:
  using Error::Error;
};

/// Solver exceeded its iteration cap or produced an inconsistent basis.
class NumericFailureError : public Error {
 public:
  using Error::Error;
};

class LpInfeasibleError : public Error {
 public:
  using Error::Error;
};

/// Off-policy bilinear certificates require gamma above a threshold.
class GammaTooSmallError : public Error {
 public:
  using Error::Error;
};

/// Spanner swap loop exceeded its theoretical cap.
class NonconvergenceGuardError : public Error {
 public:
  using Error::Error;
};

}  // namespace declab
