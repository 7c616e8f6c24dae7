#pragma once

// Typed error conditions shared across the library. Every failure mode that a
// caller can reasonably branch on gets its own type; all of them derive from
// std::runtime_error so generic handlers keep working.

#include <complex>
#include <stdexcept>
#include <string>

namespace hyperhs {

// Adaptive quadrature ran out of its panel budget. Carries the best estimate
// and the error bound actually achieved.
class ToleranceNotReached : public std::runtime_error {
 public:
  ToleranceNotReached(const std::string& what, std::complex<double> best,
                      double achieved)
      : std::runtime_error(what), best_estimate(best), achieved_bound(achieved) {}
  std::complex<double> best_estimate;
  double achieved_bound;
};

// The damping-schedule extrapolation failed to settle (successive extrapolants
// keep moving by more than ten times the target tolerance).
class NonConvergentExtrapolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Spectra with near-coincident entries are rejected rather than perturbed.
class DegenerateSpectrum : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The hyperbolic diagonalization degenerates (near-semidefinite input or a
// vanishing indefinite norm).
class NotTDiagonalizable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter constraint documented for a checker is violated.
class ConstraintViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Identity id not present in the registry.
class UnknownIdentity : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Suite configuration problems; carries a line number (0 when not line-bound).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line_no = 0)
      : std::runtime_error(what), line(line_no) {}
  int line;
};

// Importance-sampled estimate whose effective sample size fell below the
// usable floor.
class EffectiveSampleSizeTooLow : public std::runtime_error {
 public:
  EffectiveSampleSizeTooLow(const std::string& what, double ess_fraction)
      : std::runtime_error(what), ess(ess_fraction) {}
  double ess;
};

// Monte-Carlo moment estimate dominated by a handful of samples; carries the
// fraction of the total weight held by the top 0.1% of samples.
class HeavyTailWarning : public std::runtime_error {
 public:
  HeavyTailWarning(const std::string& what, double top_share)
      : std::runtime_error(what), share(top_share) {}
  double share;
};

// Saddle-point request outside the band where the real square root exists.
class OutsideBand : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Finite-difference stencil would straddle a spectral collision.
class StencilDegeneracy : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hyperhs
