#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "hyperhs/errors.hpp"
#include "hyperhs/linalg.hpp"
#include "hyperhs/rng.hpp"

namespace hyperhs::sampling {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

// Block variance profile for the k-orbital ensemble: entries couple with
// variance J/k inside a site block, V/k^2 between adjacent site blocks,
// and are exactly zero otherwise. N = r*k is the Hamiltonian size.
struct VarianceProfile {
  double J = 1.0;  // intragroup coupling, > 0
  double V = 0.0;  // intergroup coupling, >= 0
  int k = 1;       // orbitals per site, >= 1
  int r = 1;       // sites, >= 1

  void validate() const {
    if (!(J > 0.0)) throw ConstraintViolation("VarianceProfile: J must be > 0");
    if (!(V >= 0.0)) throw ConstraintViolation("VarianceProfile: V must be >= 0");
    if (k < 1 || r < 1) throw ConstraintViolation("VarianceProfile: k, r must be >= 1");
  }
  int size() const { return r * k; }
};

// Importance-sampling carrier: a sampled group element plus the log of the
// (target density / proposal density) ratio. The SVD factors are retained so
// integrands written in (U, t, V) coordinates need not re-decompose.
struct WeightedSample {
  ComplexMatrix point;  // assembled T = U diag(t) V^dagger
  double log_weight = 0.0;
  ComplexMatrix u;
  ComplexMatrix v;
  Eigen::VectorXd radii;  // singular values t_i
};

// i.i.d. standard complex Gaussian entries, E|entry|^2 = 1.
inline ComplexMatrix ginibre(int n, RngStream& rng) {
  if (n < 1 || n > 8) throw ConstraintViolation("ginibre: n must be in 1..8");
  const double inv_sqrt2 = 0.7071067811865475244;
  ComplexMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.complex_normal() * inv_sqrt2;
  return g;
}

// Haar-distributed unitary: QR of a Ginibre matrix with R's diagonal made
// real positive (the gauge that makes QR unique and the law invariant).
inline ComplexMatrix haar_unitary(int n, RngStream& rng) {
  if (n < 1 || n > 8) throw ConstraintViolation("haar_unitary: n must be in 1..8");
  ComplexMatrix g = ginibre(n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    Complex d = r(j, j);
    double ad = std::abs(d);
    Complex phase = (ad > 0.0) ? d / ad : Complex(1.0, 0.0);
    q.col(j) *= phase;
  }
  return q;
}

// Gamma(shape, 1) via Marsaglia-Tsang squeeze; shape < 1 boosted through
// Gamma(shape+1) * U^{1/shape}.
inline double gamma_variate(RngStream& rng, double shape) {
  if (!(shape > 0.0)) throw ConstraintViolation("gamma_variate: shape must be > 0");
  if (shape < 1.0) {
    double u = 1.0 - rng.uniform01();  // in (0,1]
    return gamma_variate(rng, shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = rng.normal();
    double t = 1.0 + c * x;
    if (t <= 0.0) continue;
    double v = t * t * t;
    double u = 1.0 - rng.uniform01();
    double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

// Invariant-measure sampler on the complex general linear group in SVD
// coordinates T = U diag(t) V^dagger. U, V are Haar; radii are log-normal
// proposals t_i = exp(scale * normal). The weight corrects the radial
// proposal to the invariant radial density Delta^2(t^2) prod t_i^{1-2n}
// (Lebesgue dt), so weighted averages integrate against dT dT^dagger
// det(T T^dagger)^{-n} up to one global constant.
inline WeightedSample gl_invariant_sample(int n, double scale, RngStream& rng) {
  if (n < 1 || n > 3) throw ConstraintViolation("gl_invariant_sample: n must be in 1..3");
  if (!(scale > 0.0)) throw ConstraintViolation("gl_invariant_sample: scale must be > 0");
  WeightedSample s;
  s.u = haar_unitary(n, rng);
  s.v = haar_unitary(n, rng);
  s.radii.resize(n);
  double log_proposal = 0.0;
  const double log_norm = std::log(scale) + 0.5 * std::log(2.0 * M_PI);
  for (int i = 0; i < n; ++i) {
    double z = rng.normal();
    double ti = std::exp(scale * z);
    s.radii[i] = ti;
    // log-normal(0, scale) density in t: exp(-z^2/2) / (t * scale * sqrt(2pi))
    log_proposal += -0.5 * z * z - std::log(ti) - log_norm;
  }
  double log_target = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double diff = s.radii[i] * s.radii[i] - s.radii[j] * s.radii[j];
      log_target += 2.0 * std::log(std::abs(diff));
    }
  for (int i = 0; i < n; ++i) log_target += (1.0 - 2.0 * n) * std::log(s.radii[i]);
  s.log_weight = log_target - log_proposal;
  if (!std::isfinite(s.log_weight))
    throw ConstraintViolation("gl_invariant_sample: non-finite weight");
  s.point = s.u * s.radii.asDiagonal() * s.v.adjoint();
  return s;
}

namespace detail {
// Site index of orbital row l under k orbitals per site.
inline int site_of(int l, int k) { return l / k; }

// Entry variance per block position: J/k same site, V/k^2 adjacent sites.
inline double entry_variance(const VarianceProfile& p, int l, int m) {
  int sl = site_of(l, p.k), sm = site_of(m, p.k);
  if (sl == sm) return p.J / p.k;
  if (sl == sm + 1 || sm == sl + 1) return p.V / (double(p.k) * double(p.k));
  return 0.0;
}
}  // namespace detail

// Hermitian N x N sample of the k-orbital band ensemble. Upper-triangle
// entries are independent complex Gaussians with E|H_lm|^2 given by the
// profile; diagonal entries are real Gaussians with variance J/k.
// Zero-variance positions consume no draws, so the stream layout is
// identical across V=0 and block-diagonal configurations.
inline ComplexMatrix korbital_hamiltonian(const VarianceProfile& profile, RngStream& rng) {
  profile.validate();
  const int n = profile.size();
  if (n > 64) throw ConstraintViolation("korbital_hamiltonian: r*k must be <= 64");
  ComplexMatrix h = ComplexMatrix::Zero(n, n);
  for (int l = 0; l < n; ++l) {
    h(l, l) = rng.normal() * std::sqrt(profile.J / profile.k);
    for (int m = l + 1; m < n; ++m) {
      double var = detail::entry_variance(profile, l, m);
      if (var == 0.0) continue;
      Complex z = rng.complex_normal() * std::sqrt(var * 0.5);
      h(l, m) = z;
      h(m, l) = std::conj(z);
    }
  }
  return h;
}

}  // namespace hyperhs::sampling
