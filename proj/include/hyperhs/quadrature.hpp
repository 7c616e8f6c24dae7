#pragma once

// Numerical integration engines: adaptive Gauss-Kronrod in one dimension,
// tensor-product Gauss-Hermite up to four dimensions, damped evaluation of
// conditionally convergent oscillatory integrals with extrapolation of the
// damping parameter to zero, and chunked Monte Carlo with deterministic
// streams. All reductions are performed in a fixed order so results are
// bit-identical across runs.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "hyperhs/errors.hpp"
#include "hyperhs/rng.hpp"

namespace hyperhs::quadrature {

using Complex = std::complex<double>;

struct IntegralEstimate {
  Complex value{0.0, 0.0};
  double std_error = 0.0;  // statistical error; 0 for deterministic rules
  double abs_tol = 0.0;  // deterministic error bound where available
  std::int64_t n_evals = 0;
};

struct McConfig {
  std::int64_t samples = 100000;
  std::uint64_t seed = 0x5EEDULL;
  std::int64_t chunk = 4096;
};

// Strictly descending positive damping parameters; the integral is evaluated
// at each delta and extrapolated to delta -> 0.
struct DampingSchedule {
  std::vector<double> deltas{0.2, 0.1, 0.05, 0.025};
  void validate() const {
    if (deltas.size() < 3)
      throw std::invalid_argument("DampingSchedule: needs at least 3 deltas");
    for (std::size_t i = 0; i < deltas.size(); ++i) {
      if (!(deltas[i] > 0.0))
        throw std::invalid_argument("DampingSchedule: deltas must be positive");
      if (i > 0 && !(deltas[i] < deltas[i - 1]))
        throw std::invalid_argument(
            "DampingSchedule: deltas must be strictly descending");
    }
  }
};

namespace detail {

// 7-point Gauss / 15-point Kronrod pair on [-1, 1].
inline constexpr double gk_nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
inline constexpr double gk_wk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr double gk_wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct Panel {
  double a, b;
  Complex value;
  double error;
};

template <class F>
Panel gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  Complex fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - h * gk_nodes[i]);
    fv[14 - i] = f(c + h * gk_nodes[i]);
  }
  fv[7] = f(c);
  Complex kron{0.0, 0.0}, gauss{0.0, 0.0};
  for (int i = 0; i < 8; ++i) {
    kron += gk_wk[i] * (i == 7 ? fv[7] : fv[i] + fv[14 - i]);
  }
  // Gauss points sit at the odd Kronrod indices 1, 3, 5, 7.
  for (int i = 0; i < 4; ++i) {
    gauss += gk_wg[i] * (i == 3 ? fv[7] : fv[2 * i + 1] + fv[13 - 2 * i]);
  }
  kron *= h;
  gauss *= h;
  return {a, b, kron, std::abs(kron - gauss)};
}

}  // namespace detail

// Adaptive 1D integration of a complex-valued integrand over finite [a, b].
// Worst-error-first bisection with a budget of 65536 panels; when the budget
// is exhausted a ToleranceNotReached carrying the best estimate is thrown.
// Finished panels are summed in left-endpoint order, so the result does not
// depend on the refinement history.
template <class F>
IntegralEstimate adaptive_1d(F f, double a, double b, double abs_tol) {
  if (!(std::isfinite(a) && std::isfinite(b)))
    throw std::invalid_argument("adaptive_1d: bounds must be finite");
  if (!(abs_tol > 0.0))
    throw std::invalid_argument("adaptive_1d: abs_tol must be positive");
  constexpr std::size_t panel_budget = 65536;
  std::int64_t n_evals = 0;
  auto eval = [&](double x) {
    ++n_evals;
    return f(x);
  };

  std::vector<detail::Panel> panels;
  panels.push_back(detail::gk15(eval, a, b));
  // Max-heap on (error, left endpoint) for a deterministic refinement order.
  auto cmp = [&](std::size_t i, std::size_t j) {
    return std::tie(panels[i].error, panels[j].a) <
           std::tie(panels[j].error, panels[i].a);
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(cmp)>
      heap(cmp);
  heap.push(0);
  double total_error = panels[0].error;

  while (total_error > abs_tol && panels.size() < panel_budget) {
    const std::size_t worst = heap.top();
    heap.pop();
    const detail::Panel p = panels[worst];
    const double mid = 0.5 * (p.a + p.b);
    if (mid <= p.a || mid >= p.b) continue;  // interval at machine resolution
    detail::Panel left = detail::gk15(eval, p.a, mid);
    detail::Panel right = detail::gk15(eval, mid, p.b);
    total_error += left.error + right.error - p.error;
    panels[worst] = left;
    panels.push_back(right);
    heap.push(worst);
    heap.push(panels.size() - 1);
  }

  std::sort(panels.begin(), panels.end(),
            [](const detail::Panel& x, const detail::Panel& y) { return x.a < y.a; });
  Complex sum{0.0, 0.0};
  double err = 0.0;
  for (const auto& p : panels) {
    sum += p.value;
    err += p.error;
  }
  if (err > abs_tol) {
    throw ToleranceNotReached("adaptive_1d: panel budget exhausted", sum, err);
  }
  return {sum, 0.0, err, n_evals};
}

// Gauss-Hermite nodes and weights for weight exp(-x^2), computed from the
// symmetric tridiagonal Jacobi matrix (off-diagonal sqrt(k/2), weights
// sqrt(pi) times the squared first eigenvector components).
struct GaussHermiteRule {
  std::vector<double> nodes, weights;
};

namespace detail {

// Orthonormal Hermite value/derivative for weight e^{-x^2}:
// sqrt((k+1)/2) h_{k+1} = x h_k - sqrt(k/2) h_{k-1}, h_n' = sqrt(2n) h_{n-1}.
struct HermiteEval {
  long double value, deriv, prev;  // h_n, h_n', h_{n-1}
};

inline HermiteEval hermite_orthonormal(int n, long double x) {
  long double hm = 0.0L;
  long double h = 0.7511255444649424828587030L;  // pi^{-1/4}
  for (int k = 0; k < n; ++k) {
    const long double hn =
        (x * h - std::sqrt(0.5L * k) * hm) / std::sqrt(0.5L * (k + 1));
    hm = h;
    h = hn;
  }
  return {h, std::sqrt(2.0L * n) * hm, hm};
}

}  // namespace detail

inline GaussHermiteRule gauss_hermite_rule(int order) {
  if (order < 1 || order > 64)
    throw std::invalid_argument("gauss_hermite_rule: requires 1 <= order <= 64");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
  for (int k = 1; k < order; ++k) {
    const double off = std::sqrt(0.5 * k);
    jacobi(k - 1, k) = off;
    jacobi(k, k - 1) = off;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  GaussHermiteRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    // The double-precision eigenvalue seeds a long-double Newton polish; the
    // extra digits matter when high powers of the outer nodes are integrated.
    long double x = es.eigenvalues()(i);
    for (int it = 0; it < 3; ++it) {
      const auto h = detail::hermite_orthonormal(order, x);
      x -= h.value / h.deriv;
    }
    // Gauss weight via the Christoffel sum 1 / sum_{k<n} h_k(x)^2, evaluated
    // from the same recurrence.
    long double hm = 0.0L;
    long double h = 0.7511255444649424828587030L;  // pi^{-1/4}
    long double sum = h * h;
    for (int k = 0; k + 1 < order; ++k) {
      const long double hn =
          (x * h - std::sqrt(0.5L * k) * hm) / std::sqrt(0.5L * (k + 1));
      hm = h;
      h = hn;
      sum += h * h;
    }
    rule.nodes[i] = static_cast<double>(x);
    rule.weights[i] = static_cast<double>(1.0L / sum);
  }
  return rule;
}

// Gauss-Legendre nodes and weights on [a, b] (weight 1), from the Jacobi
// matrix with off-diagonal k / sqrt(4k^2 - 1); reference weights are twice the
// squared first eigenvector components, then mapped affinely onto [a, b].
struct GaussLegendreRule {
  std::vector<double> nodes, weights;
};

inline GaussLegendreRule gauss_legendre_rule(int order, double a, double b) {
  if (order < 1 || order > 128)
    throw std::invalid_argument(
        "gauss_legendre_rule: requires 1 <= order <= 128");
  if (!(std::isfinite(a) && std::isfinite(b) && a < b))
    throw std::invalid_argument("gauss_legendre_rule: requires finite a < b");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
  for (int k = 1; k < order; ++k) {
    const double off = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k - 1, k) = off;
    jacobi(k, k - 1) = off;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  GaussLegendreRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (int i = 0; i < order; ++i) {
    rule.nodes[i] = mid + half * es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    rule.weights[i] = 2.0 * half * v0 * v0;
  }
  return rule;
}

// Tensor-product Gauss-Hermite integral of f against exp(-sum x_i^2) over
// R^dim, dim <= 4, order <= 64. Exact for polynomial integrands of total
// degree <= 2*order - 1 per coordinate.
template <class F>
IntegralEstimate gauss_hermite_tensor(F f, int dim, int order) {
  if (dim < 1 || dim > 4)
    throw std::invalid_argument("gauss_hermite_tensor: requires 1 <= dim <= 4");
  const GaussHermiteRule rule = gauss_hermite_rule(order);
  std::vector<int> idx(dim, 0);
  std::vector<double> x(dim, 0.0);
  Complex sum{0.0, 0.0};
  std::int64_t n_evals = 0;
  for (;;) {
    double w = 1.0;
    for (int d = 0; d < dim; ++d) {
      x[d] = rule.nodes[idx[d]];
      w *= rule.weights[idx[d]];
    }
    sum += w * f(x);
    ++n_evals;
    int d = 0;
    for (; d < dim; ++d) {
      if (++idx[d] < order) break;
      idx[d] = 0;
    }
    if (d == dim) break;
  }
  return {sum, 0.0, 0.0, n_evals};
}

namespace detail {

// Polynomial extrapolation of (delta_k, I_k) to delta = 0 (Neville).
inline std::vector<Complex> neville_column(const std::vector<double>& deltas,
                                           const std::vector<Complex>& values) {
  const std::size_t n = deltas.size();
  std::vector<Complex> t(values);
  std::vector<Complex> corners;  // extrapolant at each polynomial degree
  corners.push_back(t[n - 1]);
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = 0; i + level < n; ++i) {
      const double d0 = deltas[i], d1 = deltas[i + level];
      t[i] = (d0 * t[i + 1] - d1 * t[i]) / (d0 - d1);
    }
    corners.push_back(t[0]);
  }
  return corners;
}

template <class D>
double damped_cut(D& damper, double from, double direction, double threshold) {
  // First damper value at or beyond the threshold along the given direction,
  // located by doubling then bisection. The damper is assumed to grow without
  // bound away from the origin.
  double step = 1.0;
  double x = from + direction * step;
  int guard = 0;
  while (damper(x) < threshold && guard++ < 64) {
    step *= 2.0;
    x = from + direction * step;
  }
  double lo = from, hi = x;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (damper(mid) < threshold)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

}  // namespace detail

// Conditionally convergent oscillatory integral over (a, b), where either
// bound may be infinite. The integrand f is multiplied by exp(-delta *
// damper(x)) for each delta in the schedule, each damped integral is
// evaluated adaptively on a domain truncated where the damping factor falls
// below abs_tol/100, and the sequence is extrapolated to delta = 0. The
// reported value is the full-order extrapolant; std_error is its distance
// from the order-2 extrapolant built from the three smallest deltas. If the
// last two extrapolation orders disagree by more than 10 * abs_tol the
// integral is flagged as non-convergent. When per_delta is non-null the
// damped values are copied out so callers can expose the delta dependence.
template <class F, class D>
IntegralEstimate damped_oscillatory(F f, D damper, const DampingSchedule& sched,
                                    double a, double b, double abs_tol,
                                    std::vector<Complex>* per_delta = nullptr) {
  sched.validate();
  if (!(abs_tol > 0.0))
    throw std::invalid_argument("damped_oscillatory: abs_tol must be positive");

  // Crude magnitude probe to scale the truncation threshold.
  double fscale = 0.0;
  {
    const double origin = std::isfinite(a) ? a : (std::isfinite(b) ? b : 0.0);
    for (double probe : {origin, origin + 0.25, origin + 1.0, origin + 2.5}) {
      if (std::isfinite(b) && probe > b) break;
      fscale = std::max(fscale, std::abs(f(probe)));
    }
    if (!(fscale > 0.0)) fscale = 1.0;
  }

  std::vector<Complex> values;
  std::int64_t n_evals = 0;
  for (double delta : sched.deltas) {
    const double threshold = std::log(100.0 * fscale / abs_tol) / delta;
    const double origin = std::isfinite(a) ? a : (std::isfinite(b) ? b : 0.0);
    const double lo = std::isfinite(a)
                          ? a
                          : detail::damped_cut(damper, origin, -1.0, threshold);
    const double hi = std::isfinite(b)
                          ? b
                          : detail::damped_cut(damper, origin, +1.0, threshold);
    auto damped = [&](double x) { return f(x) * std::exp(-delta * damper(x)); };
    IntegralEstimate est = adaptive_1d(damped, lo, hi, abs_tol / 10.0);
    values.push_back(est.value);
    n_evals += est.n_evals;
  }
  if (per_delta) *per_delta = values;

  const auto corners = detail::neville_column(sched.deltas, values);
  const Complex full = corners.back();
  const Complex prev = corners[corners.size() - 2];
  if (std::abs(full - prev) > 10.0 * abs_tol) {
    throw NonConvergentExtrapolation(
        "damped_oscillatory: extrapolants not settling");
  }
  // Order-2 cross-check from the three smallest deltas.
  std::vector<double> d3(sched.deltas.end() - 3, sched.deltas.end());
  std::vector<Complex> v3(values.end() - 3, values.end());
  const Complex deg2 = detail::neville_column(d3, v3).back();
  return {full, std::abs(full - deg2), std::abs(full - prev), n_evals};
}

// Chunked Monte Carlo mean of f(sample). Chunk c draws from RngStream(seed, c)
// and partial sums are combined in chunk order, so the estimate is independent
// of how chunks are assigned to workers and bit-identical across runs.
// std_error is the max of the componentwise standard errors of the mean.
template <class F, class Sampler>
IntegralEstimate monte_carlo(F f, Sampler sampler, const McConfig& cfg) {
  if (cfg.samples < 1 || cfg.chunk < 1)
    throw std::invalid_argument("monte_carlo: samples and chunk must be >= 1");
  const std::int64_t n_chunks = (cfg.samples + cfg.chunk - 1) / cfg.chunk;
  Complex sum{0.0, 0.0};
  double sum_re2 = 0.0, sum_im2 = 0.0;
  std::int64_t n = 0;
  for (std::int64_t c = 0; c < n_chunks; ++c) {
    sampling::RngStream rng(cfg.seed, static_cast<std::uint64_t>(c));
    const std::int64_t count = std::min(cfg.chunk, cfg.samples - c * cfg.chunk);
    Complex csum{0.0, 0.0};
    double cre2 = 0.0, cim2 = 0.0;
    for (std::int64_t i = 0; i < count; ++i) {
      const Complex v = f(sampler(rng));
      csum += v;
      cre2 += v.real() * v.real();
      cim2 += v.imag() * v.imag();
    }
    sum += csum;
    sum_re2 += cre2;
    sum_im2 += cim2;
    n += count;
  }
  const Complex mean = sum / static_cast<double>(n);
  auto stderr_of = [&](double s2, double m) {
    const double var = std::max(0.0, s2 / n - m * m);
    return std::sqrt(var / n);
  };
  const double se = std::max(stderr_of(sum_re2, mean.real()),
                             stderr_of(sum_im2, mean.imag()));
  return {mean, se, 0.0, n};
}

}  // namespace hyperhs::quadrature
