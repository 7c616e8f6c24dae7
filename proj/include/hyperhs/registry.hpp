#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hyperhs/errors.hpp"
#include "hyperhs/identities.hpp"
#include "hyperhs/korbital.hpp"
#include "hyperhs/quadrature.hpp"
#include "hyperhs/report.hpp"

namespace hyperhs::registry {

using quadrature::McConfig;
using report::IdentityReport;
using report::ParamMap;

struct IdentityInfo {
  std::string id;
  std::vector<std::string> keys;  // accepted parameter keys
  std::string summary;
};

inline const std::vector<IdentityInfo>& registered_identities() {
  static const std::vector<IdentityInfo> table = {
      {"izmoment",
       {"lambda"},
       "moment determinant vs Vandermonde times Gaussian (exact quadratures)"},
      {"dhcoset",
       {"p", "lambda"},
       "rank-one hyperbolic coset localization via damped extrapolation"},
      {"hseps",
       {"aplus", "eps"},
       "epsilon-regularized Gaussian over the rank-one hyperbolic domain"},
      {"po5",
       {"a1", "a2", "a"},
       "2x2 real-symmetric reduction with the signed gap measure (exact constant)"},
      {"pocontrol",
       {"a1", "a2", "a"},
       "negative control: modulus gap measure, ratio drifts off the anchor"},
      {"chflat",
       {"a_re", "a_im", "n"},
       "flat complex Gaussian vs e^{-Tr A A^dag} by tensor quadrature"},
      {"chhs",
       {"a", "n"},
       "radial Bessel-kernel determinant vs e^{-sum a^2}"},
      {"guhrwettig",
       {"p", "a", "samples", "seed"},
       "two-sided unitary average vs J0-kernel determinant (Monte Carlo)"},
      {"macdonald",
       {"x", "y", "samples", "seed", "scale"},
       "radial Macdonald kernel: exact K0 at n=1, weighted MC at n=2"},
      {"radialpde",
       {"x", "y", "h"},
       "radial operator residual with conservative stencil and order check"},
      {"ingham",
       {"q", "k", "E", "eta"},
       "Fourier transform of an inverse determinant power vs cone density"},
      {"zcross",
       {"k", "r", "J", "V", "E", "eta", "samples", "seed"},
       "ensemble determinant moment vs calibrated integral representation"},
      {"saddle",
       {"J", "E", "n"},
       "in-band stationary point and its stationarity residual"},
  };
  return table;
}

inline bool is_registered(const std::string& id) {
  const auto& tab = registered_identities();
  return std::any_of(tab.begin(), tab.end(),
                     [&](const IdentityInfo& e) { return e.id == id; });
}

inline const IdentityInfo& identity_info(const std::string& id) {
  for (const IdentityInfo& e : registered_identities())
    if (e.id == id) return e;
  throw UnknownIdentity("unknown identity '" + id + "'");
}

namespace detail {

inline double scalar_or(const ParamMap& p, const std::string& key, double dflt) {
  auto it = p.find(key);
  if (it == p.end()) return dflt;
  if (it->second.size() != 1)
    throw ConfigError("parameter '" + key + "' expects a single value");
  return it->second[0];
}

inline std::vector<double> vector_or(const ParamMap& p, const std::string& key,
                                     std::vector<double> dflt) {
  auto it = p.find(key);
  if (it == p.end()) return dflt;
  if (it->second.empty())
    throw ConfigError("parameter '" + key + "' must not be empty");
  return it->second;
}

inline int int_or(const ParamMap& p, const std::string& key, int dflt) {
  const double v = scalar_or(p, key, static_cast<double>(dflt));
  const double r = std::llround(v);
  if (std::abs(v - r) > 1e-9)
    throw ConfigError("parameter '" + key + "' expects an integer");
  return static_cast<int>(r);
}

inline Eigen::Matrix2cd hermitian_2x2(const std::vector<double>& v,
                                      const std::string& key) {
  if (v.size() != 4)
    throw ConfigError("parameter '" + key +
                      "' expects 4 values: m11, re m12, im m12, m22");
  Eigen::Matrix2cd m;
  m(0, 0) = v[0];
  m(0, 1) = std::complex<double>(v[1], v[2]);
  m(1, 0) = std::complex<double>(v[1], -v[2]);
  m(1, 1) = v[3];
  return m;
}

inline void check_keys(const std::string& id, const ParamMap& params) {
  const IdentityInfo& info = identity_info(id);
  for (const auto& kv : params) {
    if (std::find(info.keys.begin(), info.keys.end(), kv.first) ==
        info.keys.end())
      throw ConfigError("identity '" + id + "' does not accept parameter '" +
                        kv.first + "'");
  }
}

inline McConfig merge_mc(const ParamMap& params, McConfig cfg) {
  auto it = params.find("samples");
  if (it != params.end()) {
    if (it->second.size() != 1 || !(it->second[0] >= 1.0))
      throw ConfigError("parameter 'samples' expects one positive value");
    cfg.samples = static_cast<std::int64_t>(std::llround(it->second[0]));
  }
  it = params.find("seed");
  if (it != params.end()) {
    if (it->second.size() != 1 || it->second[0] < 0.0)
      throw ConfigError("parameter 'seed' expects one non-negative value");
    cfg.seed = static_cast<std::uint64_t>(std::llround(it->second[0]));
  }
  return cfg;
}

}  // namespace detail

// Single entry point used by the CLI and the suite runner: dispatches a
// registered identity id with a flat parameter map, applying per-call
// samples/seed overrides to the Monte Carlo configuration.
inline IdentityReport run_identity(const std::string& id, const ParamMap& params,
                                   const McConfig& base_cfg = McConfig{}) {
  detail::check_keys(id, params);
  const McConfig cfg = detail::merge_mc(params, base_cfg);

  if (id == "izmoment") {
    return identities::verify_iz_moment_identity(
        detail::vector_or(params, "lambda", {1.8, -0.4}));
  }
  if (id == "dhcoset") {
    return identities::verify_dh_coset_u11(
        detail::vector_or(params, "p", {1.5, -0.9}),
        detail::vector_or(params, "lambda", {1.2, -0.7}));
  }
  if (id == "hseps") {
    return identities::verify_pseudounitary_hs_11(
        detail::hermitian_2x2(
            detail::vector_or(params, "aplus", {1.0, 0.3, 0.1, 0.8}), "aplus"),
        detail::scalar_or(params, "eps", 0.5));
  }
  if (id == "po5") {
    return identities::verify_pseudoorthogonal_2x2(
        detail::scalar_or(params, "a1", 1.2), detail::scalar_or(params, "a2", 0.8),
        detail::scalar_or(params, "a", 0.4));
  }
  if (id == "pocontrol") {
    return identities::negative_control_modulus_measure(
        detail::scalar_or(params, "a1", 2.0), detail::scalar_or(params, "a2", 1.0),
        detail::scalar_or(params, "a", 0.5));
  }
  if (id == "chflat") {
    const int n = detail::int_or(params, "n", 2);
    if (n < 1 || n > 2) throw ConfigError("parameter 'n' must be 1 or 2");
    const std::vector<double> re = detail::vector_or(
        params, "a_re", n == 1 ? std::vector<double>{0.7}
                               : std::vector<double>{0.3, -0.2, 0.1, 0.4});
    const std::vector<double> im = detail::vector_or(
        params, "a_im", n == 1 ? std::vector<double>{0.2}
                               : std::vector<double>{0.1, 0.2, -0.3, 0.0});
    if (static_cast<int>(re.size()) != n * n ||
        static_cast<int>(im.size()) != n * n)
      throw ConfigError("parameters 'a_re'/'a_im' expect n*n values");
    Eigen::MatrixXcd a(n, n);
    for (int i = 0; i < n; ++i)
      for (int jj = 0; jj < n; ++jj)
        a(i, jj) = std::complex<double>(re[i * n + jj], im[i * n + jj]);
    return identities::verify_chiral_flat(a, cfg);
  }
  if (id == "chhs") {
    const std::vector<double> a = detail::vector_or(params, "a", {1.0, 0.5});
    return identities::verify_chiral_hs(
        a, detail::int_or(params, "n", static_cast<int>(a.size())));
  }
  if (id == "guhrwettig") {
    return identities::verify_guhr_wettig(
        detail::vector_or(params, "p", {1.2, 0.5}),
        detail::vector_or(params, "a", {1.0, 0.4}), cfg);
  }
  if (id == "macdonald") {
    return identities::verify_matrix_macdonald(
        detail::vector_or(params, "x", {1.0, 0.4}),
        detail::vector_or(params, "y", {0.9, 0.3}), cfg,
        detail::scalar_or(params, "scale", 0.7));
  }
  if (id == "radialpde") {
    return identities::verify_radial_pde(
        detail::vector_or(params, "x", {1.0, 1.6}),
        detail::vector_or(params, "y", {0.8, 0.3}),
        detail::scalar_or(params, "h", 1e-3));
  }
  if (id == "ingham") {
    korbital::ModelParams mp;
    mp.n = 1;
    mp.E = detail::scalar_or(params, "E", 0.0);
    mp.eta = detail::scalar_or(params, "eta", 1.0);
    return korbital::ingham_siegel_check(
        detail::hermitian_2x2(
            detail::vector_or(params, "q", {2.0, 0.0, 0.0, 0.5}), "q"),
        detail::int_or(params, "k", 3), mp);
  }
  if (id == "zcross") {
    korbital::ModelParams mp;
    mp.n = 1;
    mp.E = detail::scalar_or(params, "E", 0.0);
    mp.eta = detail::scalar_or(params, "eta", 2.0);
    sampling::VarianceProfile profile;
    profile.J = detail::scalar_or(params, "J", 1.0);
    profile.V = detail::scalar_or(params, "V", 0.0);
    profile.k = detail::int_or(params, "k", 4);
    profile.r = detail::int_or(params, "r", 1);
    return korbital::verify_z_cross(mp, profile, cfg);
  }
  if (id == "saddle") {
    return korbital::verify_saddle(detail::scalar_or(params, "J", 1.0),
                                   detail::scalar_or(params, "E", 1.0),
                                   detail::int_or(params, "n", 1));
  }
  throw UnknownIdentity("unknown identity '" + id + "'");
}

}  // namespace hyperhs::registry
