// Scalar kernels: Bessel/Macdonald evaluation accuracy, the imaginary-argument
// K0 composition, the Weber integral, and Gaussian Fourier moments.
#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "hyperhs/quadrature.hpp"
#include "hyperhs/specfun.hpp"
#include "oracles.hpp"

using namespace hyperhs;
using Complex = std::complex<double>;

TEST(BesselJ0, AnchorsAndFirstZero) {
  EXPECT_DOUBLE_EQ(specfun::bessel_j0(0.0), 1.0);
  EXPECT_NEAR(specfun::bessel_j0(1.0), oracles::kJ0At1, 1e-15);
  EXPECT_LT(std::fabs(specfun::bessel_j0(oracles::kJ0FirstZero)), 1e-10);
}

TEST(BesselJ0, MatchesIndependentIntegralOracle) {
  for (double x : {0.3, 2.7, 5.0, 8.5, 12.0, 20.0, 35.0, 50.0}) {
    const double ref = oracles::j0_integral_oracle(x);
    EXPECT_NEAR(specfun::bessel_j0(x), ref, std::max(1e-14, 1e-12 * std::fabs(ref)))
        << "x = " << x;
    EXPECT_NEAR(specfun::bessel_j0(-x), specfun::bessel_j0(x), 0.0) << "even";
  }
}

TEST(BesselY0, AnchorSingularityAndDomain) {
  EXPECT_NEAR(specfun::bessel_y0(1.0), oracles::kY0At1, 1e-12);
  EXPECT_LT(specfun::bessel_y0(1e-8), -10.0);
  EXPECT_THROW(specfun::bessel_y0(0.0), std::domain_error);
  EXPECT_THROW(specfun::bessel_y0(-1.0), std::domain_error);
}

TEST(BesselPair, WronskianIdentity) {
  const double h = 1e-5;
  for (double x : {0.5, 1.0, 2.0, 5.0, 10.0}) {
    const double j0p = oracles::diff1([](double t) { return specfun::bessel_j0(t); }, x, h);
    const double y0p = oracles::diff1([](double t) { return specfun::bessel_y0(t); }, x, h);
    const double w = specfun::bessel_j0(x) * y0p - j0p * specfun::bessel_y0(x);
    EXPECT_NEAR(w, 2.0 / (oracles::kPi * x), 1e-8) << "x = " << x;
  }
}

TEST(BesselPair, RadialOdeResiduals) {
  const double h = 1e-4;
  for (double x : {0.7, 1.3, 2.2, 4.1, 7.3}) {
    auto f = [](double t) { return specfun::bessel_j0(t); };
    const double res =
        oracles::diff2(f, x, h) + oracles::diff1(f, x, h) / x + f(x);
    const double scale = std::fabs(f(x)) + std::fabs(oracles::diff2(f, x, h));
    EXPECT_LT(std::fabs(res) / scale, 1e-6) << "J0 at x = " << x;
  }
  for (double x : {0.8, 1.5, 3.0}) {
    auto f = [](double t) { return specfun::macdonald_k0(t); };
    const double res =
        oracles::diff2(f, x, h) + oracles::diff1(f, x, h) / x - f(x);
    const double scale = std::fabs(f(x)) + std::fabs(oracles::diff2(f, x, h));
    EXPECT_LT(std::fabs(res) / scale, 1e-6) << "K0 at x = " << x;
  }
}

TEST(MacdonaldK0, AnchorsDecayMonotonicityDomain) {
  EXPECT_NEAR(specfun::macdonald_k0(1.0), oracles::kK0At1, 1e-12);
  EXPECT_LT(specfun::macdonald_k0(10.0), 2e-5);
  EXPECT_GT(specfun::macdonald_k0(1.0), specfun::macdonald_k0(2.0));
  EXPECT_GT(specfun::macdonald_k0(2.0), specfun::macdonald_k0(3.0));
  EXPECT_THROW(specfun::macdonald_k0(0.0), std::domain_error);
  for (double x : {0.5, 1.0, 2.0, 5.0}) {
    const double ref = oracles::k0_integral_oracle(x);
    EXPECT_NEAR(specfun::macdonald_k0(x), ref, 1e-10 * ref) << "x = " << x;
  }
}

TEST(K0Imaginary, ComposesBesselPairWithSignFlip) {
  const Complex v = specfun::k0_imaginary(1.0);
  const Complex expect = -(oracles::kPi / 2.0) *
                         Complex(specfun::bessel_y0(1.0), specfun::bessel_j0(1.0));
  EXPECT_EQ(v, expect);  // exact composition, no rounding slack
  const Complex vm = specfun::k0_imaginary(-1.0);
  EXPECT_DOUBLE_EQ(vm.real(), v.real());
  EXPECT_DOUBLE_EQ(vm.imag(), -v.imag());
  EXPECT_THROW(specfun::k0_imaginary(0.0), std::domain_error);
}

TEST(K0Imaginary, MatchesDampedQuadratureOfHyperbolicPhase) {
  // (1/2) int_R e^{-i u cosh(mu)} dmu, damped by e^{-delta cosh(mu)} and
  // extrapolated to delta -> 0, must reproduce the closed-form composition.
  // The deg-3 and deg-2 extrapolants differ by roughly the third derivative
  // of the damped value times the product of the three largest deltas, so a
  // fine schedule is needed for the settle criterion at this tolerance.
  quadrature::DampingSchedule sched;
  sched.deltas = {0.02, 0.01, 0.005, 0.0025};
  const double inf = std::numeric_limits<double>::infinity();
  for (double u : {0.5, -0.5, 1.5, -1.5, 3.0, -3.0}) {
    auto f = [&](double mu) {
      return 0.5 * std::exp(Complex(0.0, -u * std::cosh(mu)));
    };
    auto damper = [](double mu) { return std::cosh(mu); };
    const auto est = quadrature::damped_oscillatory(f, damper, sched, -inf, inf, 1e-6);
    const Complex ref = specfun::k0_imaginary(u);
    EXPECT_LT(std::abs(est.value - ref), 1e-6) << "u = " << u;
  }
}

TEST(WeberIntegral, ClosedFormAnchors) {
  const double s = 0.7;
  EXPECT_NEAR(specfun::weber_integral(0.25, s), 2.0 * std::exp(-s * s), 1e-14);
  EXPECT_DOUBLE_EQ(specfun::weber_integral(1.0, 0.0), 0.5);
  EXPECT_NEAR(specfun::weber_integral(1.0, 2.0), 0.5 * std::exp(-1.0), 1e-14);
  EXPECT_THROW(specfun::weber_integral(0.0, 1.0), std::domain_error);
  EXPECT_THROW(specfun::weber_integral(-1.0, 1.0), std::domain_error);
}

TEST(WeberIntegral, QuadratureCompanionGrid) {
  // int_0^inf p e^{-b p^2} J0(p c) dp vs (1/2b) e^{-c^2/4b} on a 5x5 grid.
  for (double b : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    for (double c : {0.0, 0.5, 1.0, 2.0, 3.0}) {
      const double cut = std::sqrt(40.0 / b);
      auto f = [&](double p) {
        return Complex(p * std::exp(-b * p * p) * specfun::bessel_j0(p * c), 0.0);
      };
      const auto est = quadrature::adaptive_1d(f, 0.0, cut, 1e-13);
      const double closed = specfun::weber_integral(b, c);
      EXPECT_NEAR(est.value.real(), closed, 1e-9 * std::max(1.0, closed))
          << "b = " << b << ", c = " << c;
    }
  }
}

TEST(GaussFourierMoment, ClosedFormAnchors) {
  const double s2pi = std::sqrt(2.0 * oracles::kPi);
  for (double lam : {0.0, 0.8, -1.3}) {
    const Complex v = specfun::gauss_fourier_moment(0, lam);
    EXPECT_NEAR(v.real(), s2pi * std::exp(-0.5 * lam * lam), 1e-14);
    EXPECT_NEAR(v.imag(), 0.0, 1e-14);
  }
  const Complex k1 = specfun::gauss_fourier_moment(1, 1.0);
  EXPECT_NEAR(k1.real(), 0.0, 1e-14);
  EXPECT_NEAR(k1.imag(), -s2pi * std::exp(-0.5), 1e-14);
  const Complex k2 = specfun::gauss_fourier_moment(2, 0.0);
  EXPECT_NEAR(k2.real(), s2pi, 1e-14);
  EXPECT_NEAR(k2.imag(), 0.0, 1e-14);
  EXPECT_THROW(specfun::gauss_fourier_moment(17, 0.0), std::invalid_argument);
}

TEST(GaussFourierMoment, MatchesGaussHermiteQuadrature) {
  // int p^k e^{-p^2/2 - i p lambda} dp, evaluated with weight e^{-x^2} after
  // p = sqrt(2) x, against the Hermite-recurrence closed form.
  const double r2 = std::sqrt(2.0);
  for (int k = 0; k <= 8; ++k) {
    for (double lam : {0.0, 0.7, -0.7, 2.0, -2.0}) {
      auto f = [&](const std::vector<double>& x) {
        const double p = r2 * x[0];
        return std::pow(p, k) * std::exp(Complex(0.0, -p * lam));
      };
      const Complex quad = r2 * quadrature::gauss_hermite_tensor(f, 1, 40).value;
      const Complex closed = specfun::gauss_fourier_moment(k, lam);
      EXPECT_LT(std::abs(quad - closed), 1e-10 * std::max(1.0, std::abs(closed)))
          << "k = " << k << ", lambda = " << lam;
    }
  }
}
