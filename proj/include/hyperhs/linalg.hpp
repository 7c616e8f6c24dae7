#pragma once

// Dense complex linear algebra for small indefinite-metric problems: the
// signature matrix L = diag(1_{n1}, -1_{n2}), pseudounitarity tests,
// diagonalization of A_plus * L by a pseudounitary similarity, and the
// two-sided decomposition A = T a T^dag, B = T^{-dag} a T^{-1} of a pair of
// Hermitian positive definite matrices. Sizes are capped at 8; spectra with
// gaps below 1e-10 are rejected rather than perturbed.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "hyperhs/errors.hpp"

namespace hyperhs::linalg {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr int max_size = 8;
inline constexpr double degeneracy_tol = 1e-10;

// Metric signature (n1 pluses, n2 minuses).
struct Signature {
  int n1 = 1;
  int n2 = 1;
  int size() const { return n1 + n2; }
  ComplexMatrix matrix() const {
    ComplexMatrix l = ComplexMatrix::Zero(size(), size());
    for (int i = 0; i < n1; ++i) l(i, i) = 1.0;
    for (int i = n1; i < size(); ++i) l(i, i) = -1.0;
    return l;
  }
};

namespace detail {

inline void check_square(const ComplexMatrix& m, const char* who) {
  if (m.rows() != m.cols())
    throw std::invalid_argument(std::string(who) + ": matrix must be square");
  if (m.rows() < 1 || m.rows() > max_size)
    throw std::invalid_argument(std::string(who) +
                                ": size must be between 1 and 8");
}

inline void check_hermitian(const ComplexMatrix& m, const char* who) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw ConstraintViolation(std::string(who) + ": matrix is not Hermitian");
}

// Multiply each column by a phase so that its largest-modulus entry (lowest
// index on ties) is real positive. Makes eigenvector bases deterministic.
inline void fix_column_phases(ComplexMatrix& v) {
  for (int j = 0; j < v.cols(); ++j) {
    int arg = 0;
    double best = -1.0;
    for (int i = 0; i < v.rows(); ++i) {
      const double a = std::abs(v(i, j));
      if (a > best + 1e-14) {
        best = a;
        arg = i;
      }
    }
    if (best > 0.0) v.col(j) *= std::conj(v(arg, j)) / std::abs(v(arg, j));
  }
}

inline void check_spectrum_gaps(const RealVector& vals, const char* who) {
  for (int i = 0; i < vals.size(); ++i)
    for (int j = i + 1; j < vals.size(); ++j)
      if (std::abs(vals(i) - vals(j)) < degeneracy_tol)
        throw DegenerateSpectrum(std::string(who) +
                                 ": spectrum has a gap below 1e-10");
}

}  // namespace detail

// Product of pairwise differences prod_{i<j} (x_i - x_j).
inline double vandermonde(const std::vector<double>& x) {
  double prod = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) prod *= x[i] - x[j];
  return prod;
}

// True when T L T^dag L = 1 entrywise within tol.
inline bool is_pseudounitary(const ComplexMatrix& t, const Signature& sig,
                             double tol = 1e-10) {
  detail::check_square(t, "is_pseudounitary");
  if (t.rows() != sig.size())
    throw std::invalid_argument("is_pseudounitary: signature size mismatch");
  const ComplexMatrix l = sig.matrix();
  const ComplexMatrix r =
      t * l * t.adjoint() * l - ComplexMatrix::Identity(t.rows(), t.rows());
  return r.cwiseAbs().maxCoeff() < tol;
}

// True when m is Hermitian with all eigenvalues above tol.
inline bool is_positive_definite(const ComplexMatrix& m,
                                 double tol = degeneracy_tol) {
  detail::check_square(m, "is_positive_definite");
  detail::check_hermitian(m, "is_positive_definite");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  return es.eigenvalues().minCoeff() > tol;
}

// Result of diagonalizing A_plus * L: A_plus * L = T diag(p) T^{-1} with T in
// U(n1, n2); p holds the n1 positive entries descending, then the n2 negative
// entries descending.
struct TDiagonalization {
  ComplexMatrix t;
  RealVector p;
};

// Diagonalize A_plus * L for Hermitian positive definite A_plus. Reduction to
// the Hermitian pencil: with S = A_plus^{1/2}, A_plus L = S (S L S) S^{-1},
// so the eigenvalues are those of the Hermitian matrix M = S L S (real, with
// the inertia of L) and the eigenvector basis V = S W (M = W D W^dag) obeys
// V^dag L V = D. Columns scaled by |d|^{-1/2} make V^dag L V = L, so T = V
// is pseudounitary and A_plus L = T diag(p) T^{-1}.
inline TDiagonalization t_diagonalize(const ComplexMatrix& a_plus,
                                      const Signature& sig) {
  detail::check_square(a_plus, "t_diagonalize");
  if (a_plus.rows() != sig.size())
    throw std::invalid_argument("t_diagonalize: signature size mismatch");
  detail::check_hermitian(a_plus, "t_diagonalize");

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es_a(a_plus);
  if (es_a.eigenvalues().minCoeff() < degeneracy_tol)
    throw NotTDiagonalizable(
        "t_diagonalize: A_plus is not positive definite (a boundary matrix "
        "has no pseudounitary diagonalization)");
  const int n = sig.size();
  ComplexMatrix s = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    s += std::sqrt(es_a.eigenvalues()(i)) * es_a.eigenvectors().col(i) *
         es_a.eigenvectors().col(i).adjoint();

  const ComplexMatrix m = s * sig.matrix() * s;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es_m(m);
  detail::check_spectrum_gaps(es_m.eigenvalues(), "t_diagonalize");

  // Ascending eigenvalues: the last n1 are positive, the first n2 negative
  // (Sylvester). Reorder to positives descending, then negatives descending.
  std::vector<int> order;
  for (int i = n - 1; i >= sig.n2; --i) order.push_back(i);
  for (int i = sig.n2 - 1; i >= 0; --i) order.push_back(i);

  TDiagonalization out;
  out.p.resize(n);
  ComplexMatrix v(n, n);
  for (int j = 0; j < n; ++j) {
    const double d = es_m.eigenvalues()(order[j]);
    if ((j < sig.n1) != (d > 0.0))
      throw NotTDiagonalizable("t_diagonalize: inertia does not match the "
                               "signature");
    out.p(j) = d;
    v.col(j) = s * es_m.eigenvectors().col(order[j]) / std::sqrt(std::abs(d));
  }
  detail::fix_column_phases(v);
  out.t = v;
  return out;
}

// Result of the two-sided decomposition of Hermitian positive definite (A, B):
// A = T diag(a) T^dag and B = T^{-dag} diag(a) T^{-1}, a positive descending.
struct ChiralPair {
  ComplexMatrix t;
  RealVector a;
};

// The product AB = T diag(a^2) T^{-1} fixes a as the positive square roots of
// the eigenvalues of the Hermitian positive definite pencil M = B^{1/2} A
// B^{1/2}; the eigenbasis fixes T up to column scalings, which are pinned by
// reconstructing A.
inline ChiralPair chiral_pair_decompose(const ComplexMatrix& a,
                                        const ComplexMatrix& b) {
  detail::check_square(a, "chiral_pair_decompose");
  detail::check_square(b, "chiral_pair_decompose");
  if (a.rows() != b.rows())
    throw std::invalid_argument("chiral_pair_decompose: size mismatch");
  if (!is_positive_definite(a) || !is_positive_definite(b))
    throw ConstraintViolation(
        "chiral_pair_decompose: both inputs must be Hermitian positive "
        "definite");
  const int n = static_cast<int>(a.rows());

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es_b(b);
  ComplexMatrix sb = ComplexMatrix::Zero(n, n);
  ComplexMatrix sb_inv = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const double r = std::sqrt(es_b.eigenvalues()(i));
    const ComplexMatrix proj =
        es_b.eigenvectors().col(i) * es_b.eigenvectors().col(i).adjoint();
    sb += r * proj;
    sb_inv += (1.0 / r) * proj;
  }

  const ComplexMatrix m = sb * a * sb;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es_m(m);

  ChiralPair out;
  out.a.resize(n);
  ComplexMatrix v(n, n);
  for (int j = 0; j < n; ++j) {
    const int src = n - 1 - j;  // descending
    out.a(j) = std::sqrt(es_m.eigenvalues()(src));
    v.col(j) = sb_inv * es_m.eigenvectors().col(src);
  }
  detail::check_spectrum_gaps(out.a, "chiral_pair_decompose");

  // A = V G V^dag with G = W^dag M W diagonal in exact arithmetic; the column
  // scalings |c_j|^2 = G_jj / a_j reconstruct A, phases pinned per column.
  const ComplexMatrix v_inv = v.inverse();
  const ComplexMatrix g = v_inv * a * v_inv.adjoint();
  for (int j = 0; j < n; ++j) {
    const double gjj = g(j, j).real();
    if (!(gjj > 0.0))
      throw ConstraintViolation(
          "chiral_pair_decompose: reconstruction scale not positive");
    v.col(j) *= std::sqrt(gjj / out.a(j));
  }
  // Gauge: rotate each column so the diagonal entry of T is real positive.
  for (int j = 0; j < n; ++j) {
    const std::complex<double> d = v(j, j);
    if (std::abs(d) > 0.0) v.col(j) *= std::conj(d) / std::abs(d);
  }
  out.t = v;
  return out;
}

// Singular value decomposition m = u diag(s) v^dag, s descending.
struct Svd {
  ComplexMatrix u;
  RealVector s;
  ComplexMatrix v;
};

inline Svd svd_complex(const ComplexMatrix& m) {
  detail::check_square(m, "svd_complex");
  Eigen::JacobiSVD<ComplexMatrix> svd(m,
                                      Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

}  // namespace hyperhs::linalg
