// Dense complex matrix helpers: Vandermonde products, indefinite-metric
// diagonalization, the two-sided positive-pair decomposition, and SVD.
#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "hyperhs/errors.hpp"
#include "hyperhs/linalg.hpp"
#include "hyperhs/rng.hpp"
#include "hyperhs/sampling.hpp"

using namespace hyperhs;
using Complex = std::complex<double>;
using linalg::ComplexMatrix;

namespace {

ComplexMatrix random_hermitian_pd(int n, sampling::RngStream& rng) {
  const ComplexMatrix g = sampling::ginibre(n, rng);
  return g * g.adjoint() + 0.2 * ComplexMatrix::Identity(n, n);
}

}  // namespace

TEST(Vandermonde, ProductsAndEdgeCases) {
  EXPECT_DOUBLE_EQ(linalg::vandermonde({3.0, 1.0}), 2.0);
  EXPECT_DOUBLE_EQ(linalg::vandermonde({1.0, 1.0}), 0.0);
  EXPECT_DOUBLE_EQ(linalg::vandermonde({2.0, 0.0, -1.0}), 6.0);
  EXPECT_DOUBLE_EQ(linalg::vandermonde({}), 1.0);
  EXPECT_DOUBLE_EQ(linalg::vandermonde({4.2}), 1.0);
}

TEST(Vandermonde, TotallyAntisymmetric) {
  sampling::RngStream rng(11, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform01() * 4);  // 2..5
    std::vector<double> v(n);
    for (double& t : v) t = 4.0 * rng.uniform01() - 2.0;
    const double base = linalg::vandermonde(v);
    int i = static_cast<int>(rng.uniform01() * n);
    int j = static_cast<int>(rng.uniform01() * n);
    if (i == j) j = (j + 1) % n;
    std::swap(v[i], v[j]);
    EXPECT_NEAR(linalg::vandermonde(v), -base, 1e-12 * std::fabs(base) + 1e-15);
  }
}

TEST(IsPseudounitary, BoostAndCounterexample) {
  const linalg::Signature sig{1, 1};
  EXPECT_TRUE(linalg::is_pseudounitary(ComplexMatrix::Identity(2, 2), sig, 1e-12));
  const double th = 0.8;
  ComplexMatrix boost(2, 2);
  boost << std::cosh(th), std::sinh(th), std::sinh(th), std::cosh(th);
  EXPECT_TRUE(linalg::is_pseudounitary(boost, sig, 1e-12));
  ComplexMatrix shear(2, 2);
  shear << 1.0, 0.1, 0.0, 1.0;
  EXPECT_FALSE(linalg::is_pseudounitary(shear, sig, 1e-3));
  EXPECT_THROW(linalg::is_pseudounitary(ComplexMatrix::Identity(3, 3), sig, 1e-9),
               std::invalid_argument);
}

TEST(TDiagonalize, IdentityInput) {
  const linalg::Signature sig{1, 1};
  const auto d = linalg::t_diagonalize(ComplexMatrix::Identity(2, 2), sig);
  EXPECT_LT((d.t - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(d.p(0), 1.0, 1e-12);
  EXPECT_NEAR(d.p(1), -1.0, 1e-12);
}

TEST(TDiagonalize, GenericTwoByTwo) {
  const linalg::Signature sig{1, 1};
  ComplexMatrix ap(2, 2);
  ap << 2.0, 0.5, 0.5, 1.0;
  const auto d = linalg::t_diagonalize(ap, sig);
  EXPECT_GT(d.p(0), 0.0);
  EXPECT_LT(d.p(1), 0.0);
  const ComplexMatrix a = ap * sig.matrix();
  const ComplexMatrix rec =
      d.t * d.p.cast<Complex>().asDiagonal() * d.t.inverse();
  EXPECT_LT((rec - a).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(TDiagonalize, NilpotentProductRejected) {
  const linalg::Signature sig{1, 1};
  ComplexMatrix ap(2, 2);
  ap << 1.0, -1.0, -1.0, 1.0;  // singular: a zero eigenvalue
  EXPECT_THROW(linalg::t_diagonalize(ap, sig), NotTDiagonalizable);
}

TEST(TDiagonalize, RandomReconstructionAndPseudounitarity) {
  sampling::RngStream rng(17, 0);
  const std::vector<std::pair<int, int>> sigs = {{1, 1}, {1, 2}, {2, 1},
                                                 {2, 2}, {1, 3}, {3, 1}};
  int done = 0;
  for (int trial = 0; done < 100; ++trial) {
    ASSERT_LT(trial, 400);
    const auto [n1, n2] = sigs[trial % sigs.size()];
    const linalg::Signature sig{n1, n2};
    const ComplexMatrix ap = random_hermitian_pd(sig.size(), rng);
    linalg::TDiagonalization d;
    try {
      d = linalg::t_diagonalize(ap, sig);
    } catch (const NotTDiagonalizable&) {
      continue;  // near-degenerate draw; resample
    }
    ++done;
    EXPECT_TRUE(linalg::is_pseudounitary(d.t, sig, 1e-8));
    for (int i = 0; i < n1; ++i) EXPECT_GT(d.p(i), 0.0);
    for (int i = n1; i < sig.size(); ++i) EXPECT_LT(d.p(i), 0.0);
    for (int i = 1; i < n1; ++i) EXPECT_LE(d.p(i), d.p(i - 1));
    const ComplexMatrix rec =
        d.t * d.p.cast<Complex>().asDiagonal() * d.t.inverse();
    EXPECT_LT((rec - ap * sig.matrix()).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(ChiralPairDecompose, IdentityAndScalar) {
  // The identity anchor lives at n=1: larger identities have a degenerate
  // product spectrum, which the decomposition rejects by design.
  const ComplexMatrix eye = ComplexMatrix::Identity(1, 1);
  const auto d = linalg::chiral_pair_decompose(eye, eye);
  EXPECT_LT((d.t - eye).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_NEAR(d.a(0), 1.0, 1e-10);
  EXPECT_THROW(linalg::chiral_pair_decompose(ComplexMatrix::Identity(2, 2),
                                             ComplexMatrix::Identity(2, 2)),
               DegenerateSpectrum);

  ComplexMatrix a1(1, 1), b1(1, 1);
  a1 << 4.0;
  b1 << 9.0;
  const auto s = linalg::chiral_pair_decompose(a1, b1);
  EXPECT_NEAR(s.a(0), 6.0, 1e-12);
  EXPECT_NEAR(s.t(0, 0).real(), std::sqrt(2.0 / 3.0), 1e-12);
  EXPECT_NEAR(s.t(0, 0).imag(), 0.0, 1e-12);
}

TEST(ChiralPairDecompose, RandomPairReconstructionAndTraceInvariant) {
  sampling::RngStream rng(23, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + (trial % 2);
    const ComplexMatrix a = random_hermitian_pd(n, rng);
    const ComplexMatrix b = random_hermitian_pd(n, rng);
    const auto d = linalg::chiral_pair_decompose(a, b);
    ComplexMatrix ad = ComplexMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      EXPECT_GT(d.a(i), 0.0);
      ad(i, i) = d.a(i);
      EXPECT_GT(d.t(i, i).real(), 0.0);          // real-positive diagonal gauge
      EXPECT_NEAR(d.t(i, i).imag(), 0.0, 1e-10);
    }
    const ComplexMatrix ra = d.t * ad * d.t.adjoint();
    const ComplexMatrix rb =
        d.t.adjoint().inverse() * ad * d.t.inverse();
    EXPECT_LT((ra - a).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_LT((rb - b).cwiseAbs().maxCoeff(), 1e-8);
    // Trace similarity invariant: Tr(AB) = sum of squared spectrum entries.
    double sum_a2 = 0.0;
    for (int i = 0; i < n; ++i) sum_a2 += d.a(i) * d.a(i);
    EXPECT_NEAR((a * b).trace().real(), sum_a2,
                1e-8 * std::max(1.0, sum_a2));
  }
}

TEST(ChiralPairDecompose, RejectsIndefiniteInput) {
  ComplexMatrix bad(2, 2);
  bad << 1.0, 0.0, 0.0, -0.5;
  const ComplexMatrix eye = ComplexMatrix::Identity(2, 2);
  EXPECT_THROW(linalg::chiral_pair_decompose(bad, eye), ConstraintViolation);
  EXPECT_THROW(linalg::chiral_pair_decompose(eye, bad), ConstraintViolation);
}

TEST(SvdComplex, AnchorsAndReconstruction) {
  const auto id = linalg::svd_complex(ComplexMatrix::Identity(3, 3));
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(id.s(i), 1.0, 1e-12);

  ComplexMatrix d(2, 2);
  d << Complex(3.0, 0.0), 0.0, 0.0, Complex(0.0, 2.0);
  const auto s = linalg::svd_complex(d);
  EXPECT_NEAR(s.s(0), 3.0, 1e-12);
  EXPECT_NEAR(s.s(1), 2.0, 1e-12);

  sampling::RngStream rng(31, 0);
  const ComplexMatrix m = sampling::ginibre(3, rng);
  const auto f = linalg::svd_complex(m);
  const ComplexMatrix rec = f.u * f.s.cast<Complex>().asDiagonal() * f.v.adjoint();
  EXPECT_LT((rec - m).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT((f.u.adjoint() * f.u - ComplexMatrix::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT((f.v.adjoint() * f.v - ComplexMatrix::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-10);
  for (int i = 1; i < 3; ++i) EXPECT_LE(f.s(i), f.s(i - 1));
}

TEST(SvdComplex, SingularValuesUnitaryInvariant) {
  sampling::RngStream rng(37, 0);
  const ComplexMatrix m = sampling::ginibre(3, rng);
  const ComplexMatrix g = sampling::haar_unitary(3, rng);
  const ComplexMatrix h = sampling::haar_unitary(3, rng);
  const auto base = linalg::svd_complex(m);
  const auto rot = linalg::svd_complex(g * m * h);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(rot.s(i), base.s(i), 1e-9);
}

TEST(IsPositiveDefinite, AnchorsAndHermitianGuard) {
  EXPECT_TRUE(linalg::is_positive_definite(ComplexMatrix::Identity(2, 2)));
  ComplexMatrix d(2, 2);
  d << 1.0, 0.0, 0.0, -0.1;
  EXPECT_FALSE(linalg::is_positive_definite(d));
  ComplexMatrix m(2, 2);
  m << 2.0, 1.0, 1.0, 2.0;
  EXPECT_TRUE(linalg::is_positive_definite(m));
  ComplexMatrix nh(2, 2);
  nh << 1.0, Complex(0.0, 0.4), Complex(0.0, 0.4), 1.0;  // not Hermitian
  EXPECT_THROW(linalg::is_positive_definite(nh), ConstraintViolation);
}
