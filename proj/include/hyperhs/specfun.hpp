#pragma once

// Scalar special functions used by the identity checkers: cylinder functions
// J0, Y0, the Macdonald function K0, the boundary value K0(iu), a closed-form
// radial Gaussian-Bessel integral, and one-dimensional Gaussian Fourier
// moments. Everything is self-contained; no external special-function library.

#include <cmath>
#include <complex>
#include <stdexcept>

namespace hyperhs::specfun {

inline constexpr double pi = 3.141592653589793238462643383279502884;

namespace detail {

inline constexpr long double pi_l = 3.141592653589793238462643383279502884L;
inline constexpr long double euler_gamma_l =
    0.577215664901532860606512090082402431L;

// Ascending series, reliable for |x| <= 14 when accumulated in long double:
// the largest term is ~3e4 times the result there, well inside the 64-bit
// mantissa headroom.
// j0: sum (-t)^k/(k!)^2, t = x^2/4.
// y0: (2/pi)[(log(x/2)+gamma) j0 + sum (-1)^(k+1) H_k t^k/(k!)^2].
// k0: -(log(x/2)+gamma) i0 + sum H_k t^k/(k!)^2,  i0 = sum t^k/(k!)^2.
inline long double j0_series(long double x) {
  const long double t = 0.25L * x * x;
  long double term = 1.0L, sum = 1.0L;
  for (int k = 1; k <= 80; ++k) {
    term *= -t / (static_cast<long double>(k) * k);
    sum += term;
    if (std::fabs(term) < 1e-24L * std::fabs(sum) + 1e-30L) break;
  }
  return sum;
}

inline long double y0_series(long double x) {
  const long double t = 0.25L * x * x;
  long double term = 1.0L, sum = 0.0L, harmonic = 0.0L;
  for (int k = 1; k <= 80; ++k) {
    term *= -t / (static_cast<long double>(k) * k);
    harmonic += 1.0L / k;
    const long double add = -term * harmonic;  // (-1)^(k+1) H_k t^k/(k!)^2
    sum += add;
    if (std::fabs(add) < 1e-24L * (std::fabs(sum) + 1.0L)) break;
  }
  return (2.0L / pi_l) *
         ((std::log(0.5L * x) + euler_gamma_l) * j0_series(x) + sum);
}

inline long double k0_series(long double x) {
  const long double t = 0.25L * x * x;
  long double term = 1.0L, i0 = 1.0L, sum = 0.0L, harmonic = 0.0L;
  for (int k = 1; k <= 80; ++k) {
    term *= t / (static_cast<long double>(k) * k);
    harmonic += 1.0L / k;
    i0 += term;
    sum += term * harmonic;
    if (term < 1e-24L * i0) break;
  }
  return -(std::log(0.5L * x) + euler_gamma_l) * i0 + sum;
}

// Hankel asymptotic expansion for x > 14, with w = x - pi/4:
//   J0 = sqrt(2/(pi x)) [cos(w) P - sin(w) Q]
//   Y0 = sqrt(2/(pi x)) [sin(w) P + cos(w) Q]
// where P = sum (-1)^k a_{2k} x^{-2k}, Q = sum (-1)^k a_{2k+1} x^{-2k-1},
// a_m = a_{m-1} * (-(2m-1)^2) / (8m), a_0 = 1. Terms are added while they
// shrink; at x >= 14 the optimally truncated tail sits below 1e-13 of the
// oscillation envelope (at x = 8 it would only reach ~1e-8, which is why the
// ascending series carries the range up to 14).
struct HankelPQ {
  long double p, q;
};

inline HankelPQ hankel_pq(long double x) {
  long double a = 1.0L;            // a_m
  long double p = 1.0L, q = 0.0L;  // running sums
  long double xp = 1.0L;           // x^{-m}
  long double prev = 1e30L;
  for (int m = 1; m <= 40; ++m) {
    const long double tm = 2.0L * m - 1.0L;
    a *= -(tm * tm) / (8.0L * m);
    xp /= x;
    const long double term = a * xp;
    if (std::fabs(term) > prev) break;  // divergent tail reached
    prev = std::fabs(term);
    if (m % 2 == 1) {
      q += (m % 4 == 1) ? term : -term;  // (-1)^k, m = 2k+1
    } else {
      p += (m % 4 == 0) ? term : -term;  // (-1)^k, m = 2k
    }
    if (std::fabs(term) < 1e-24L) break;
  }
  return {p, q};
}

// Exponentially scaled Macdonald integral for x > 8:
//   e^x K0(x) = int_0^inf exp(-x(cosh t - 1)) dt,
// truncated where x(cosh t - 1) > 48 and integrated by composite 10-point
// Gauss-Legendre; the integrand is analytic, so the panels converge to well
// below double precision.
inline long double k0_scaled_integral(long double x) {
  static const long double gl_x[5] = {
      0.1488743389816312108848260L, 0.4333953941292471907992659L,
      0.6794095682990244062343274L, 0.8650633666889845107320967L,
      0.9739065285171717200779640L};
  static const long double gl_w[5] = {
      0.2955242247147528701738930L, 0.2692667193099963550912269L,
      0.2190863625159820439955349L, 0.1494513491505805931457763L,
      0.0666713443086881375935688L};
  const long double tmax = std::acosh(1.0L + 48.0L / x);
  const int panels = 24;
  const long double h = tmax / panels;
  long double sum = 0.0L;
  for (int p = 0; p < panels; ++p) {
    const long double mid = (p + 0.5L) * h;
    for (int i = 0; i < 5; ++i) {
      const long double dt = 0.5L * h * gl_x[i];
      const long double tp = mid + dt, tm = mid - dt;
      sum += gl_w[i] * (std::exp(-x * (std::cosh(tp) - 1.0L)) +
                        std::exp(-x * (std::cosh(tm) - 1.0L)));
    }
  }
  return sum * 0.5L * h;
}

}  // namespace detail

// J0(x), relative accuracy around 1e-12 or better for |x| <= 50.
inline double bessel_j0(double x) {
  const long double ax = std::fabs(static_cast<long double>(x));
  if (ax <= 14.0L) return static_cast<double>(detail::j0_series(ax));
  const auto [p, q] = detail::hankel_pq(ax);
  const long double w = ax - 0.25L * detail::pi_l;
  const long double amp = std::sqrt(2.0L / (detail::pi_l * ax));
  return static_cast<double>(amp * (std::cos(w) * p - std::sin(w) * q));
}

// Y0(x) for x > 0.
inline double bessel_y0(double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_y0: requires x > 0");
  const long double lx = static_cast<long double>(x);
  if (lx <= 14.0L) return static_cast<double>(detail::y0_series(lx));
  const auto [p, q] = detail::hankel_pq(lx);
  const long double w = lx - 0.25L * detail::pi_l;
  const long double amp = std::sqrt(2.0L / (detail::pi_l * lx));
  return static_cast<double>(amp * (std::sin(w) * p + std::cos(w) * q));
}

// K0(x) for x > 0. Series for x <= 8; for x > 8 the defining Laplace-type
// integral, exponentially scaled. The divergent large-x asymptotic series
// bottoms out near 2e-8 at x = 8, which would break the accuracy contract,
// so the integral branch is used instead.
inline double macdonald_k0(double x) {
  if (!(x > 0.0)) throw std::domain_error("macdonald_k0: requires x > 0");
  const long double lx = static_cast<long double>(x);
  if (lx <= 8.0L) return static_cast<double>(detail::k0_series(lx));
  return static_cast<double>(std::exp(-lx) * detail::k0_scaled_integral(lx));
}

// Boundary value of the Macdonald function on the imaginary axis, u != 0:
//   K0(iu) = -(pi/2) [ Y0(|u|) + i sgn(u) J0(|u|) ].
// This is the closed form of (1/2) int_{-inf}^{inf} exp(-i u cosh m) dm.
inline std::complex<double> k0_imaginary(double u) {
  if (u == 0.0) throw std::domain_error("k0_imaginary: requires u != 0");
  const double au = std::fabs(u);
  const double sgn = (u > 0.0) ? 1.0 : -1.0;
  return -(0.5 * pi) * std::complex<double>(bessel_y0(au), sgn * bessel_j0(au));
}

// int_0^inf p exp(-b p^2) J0(p c) dp = exp(-c^2/(4b)) / (2b),  b > 0.
inline double weber_integral(double b, double c) {
  if (!(b > 0.0)) throw std::domain_error("weber_integral: requires b > 0");
  return std::exp(-c * c / (4.0 * b)) / (2.0 * b);
}

// int_{-inf}^{inf} p^k exp(-p^2/2 - i p l) dp
//   = sqrt(2 pi) (-i)^k He_k(l) exp(-l^2/2),
// with He_k the monic (probabilists') Hermite polynomials,
// He_{k+1} = l He_k - k He_{k-1}. Guarded to k <= 16.
inline std::complex<double> gauss_fourier_moment(int k, double lambda) {
  if (k < 0 || k > 16)
    throw std::invalid_argument("gauss_fourier_moment: requires 0 <= k <= 16");
  long double he_prev = 0.0L, he = 1.0L;  // He_{-1}, He_0
  for (int j = 0; j < k; ++j) {
    const long double next = lambda * he - static_cast<long double>(j) * he_prev;
    he_prev = he;
    he = next;
  }
  static const std::complex<double> minus_i_pow[4] = {
      {1.0, 0.0}, {0.0, -1.0}, {-1.0, 0.0}, {0.0, 1.0}};
  const double amp = std::sqrt(2.0 * pi) * static_cast<double>(he) *
                     std::exp(-0.5 * lambda * lambda);
  return amp * minus_i_pow[k % 4];
}

}  // namespace hyperhs::specfun
