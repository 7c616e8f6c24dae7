#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

namespace hyperhs::report {

using Complex = std::complex<double>;

// One verification record. ratio = lhs / (const_fit * rhs); std_error is the
// absolute statistical error of lhs (0 for deterministic routes).
struct IdentityReport {
  std::string identity_id;
  std::string params_digest;
  Complex lhs{0.0, 0.0};
  Complex rhs{0.0, 0.0};
  Complex const_fit{1.0, 0.0};
  Complex ratio{0.0, 0.0};
  double std_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::uint64_t seed = 0;
  std::int64_t runtime_ms = 0;
};

// Ordered scalar/vector parameters, canonicalized for digesting.
using ParamMap = std::map<std::string, std::vector<double>>;

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf);
}

// Canonical text form: "[id]\n" then one sorted "key=v1,v2,...\n" line per key.
inline std::string canonical_params(const std::string& id, const ParamMap& params) {
  std::string s = "[" + id + "]\n";
  for (const auto& [key, vals] : params) {
    s += key;
    s += '=';
    for (std::size_t i = 0; i < vals.size(); ++i) {
      if (i) s += ',';
      s += format_double(vals[i]);
    }
    s += '\n';
  }
  return s;
}

inline std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return std::string(buf);
}

inline std::string params_digest(const std::string& id, const ParamMap& params) {
  return hex64(fnv1a64(canonical_params(id, params)));
}

// Shared pass rule: |ratio - 1| < tolerance + 3 * std_error / |const_fit * rhs|.
inline bool pass_rule(const Complex& ratio, double tolerance, double std_error,
                      const Complex& const_fit, const Complex& rhs) {
  const double denom = std::abs(const_fit * rhs);
  const double slack = denom > 0.0 ? 3.0 * std_error / denom : 0.0;
  return std::abs(ratio - 1.0) < tolerance + slack;
}

// Assemble a report from the raw pieces, applying the shared pass rule.
inline IdentityReport make_report(const std::string& id, const ParamMap& params,
                                  Complex lhs, Complex rhs, Complex const_fit,
                                  double std_error, double tolerance,
                                  std::uint64_t seed, std::int64_t runtime_ms) {
  IdentityReport r;
  r.identity_id = id;
  r.params_digest = params_digest(id, params);
  r.lhs = lhs;
  r.rhs = rhs;
  r.const_fit = const_fit;
  const Complex denom = const_fit * rhs;
  r.ratio = (denom != Complex(0.0, 0.0)) ? lhs / denom : Complex(0.0, 0.0);
  r.std_error = std_error;
  r.tolerance = tolerance;
  r.pass = pass_rule(r.ratio, tolerance, std_error, const_fit, rhs);
  r.seed = seed;
  r.runtime_ms = runtime_ms;
  return r;
}

}  // namespace hyperhs::report
