#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "hyperhs/errors.hpp"
#include "hyperhs/quadrature.hpp"
#include "hyperhs/registry.hpp"
#include "hyperhs/report.hpp"

namespace hyperhs::suite {

inline constexpr const char* kToolVersion = "1.0.0";

enum class ReportFormat { json, csv };

struct SuiteEntry {
  std::string id;
  report::ParamMap params;
  double tolerance = -1.0;  // < 0 means: use the identity's default
};

struct SuiteConfig {
  std::vector<SuiteEntry> entries;
  std::uint64_t seed = quadrature::McConfig{}.seed;
  std::int64_t samples = quadrature::McConfig{}.samples;
  std::string output_path;
  std::string format = "json";
  bool timing = false;  // off by default so output is byte-stable across runs
};

struct SuiteResult {
  std::vector<report::IdentityReport> reports;
  std::vector<std::string> errors;  // aligned with reports; empty when clean
  int passed = 0;
  int failed = 0;
  int errored = 0;
  std::string config_digest;
  std::string tool_version;
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline double parse_double(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing text");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse number '" + s + "'", line);
  }
}

inline std::vector<double> parse_list(const std::string& s, int line) {
  std::vector<double> out;
  std::string item;
  std::stringstream ss(s);
  while (std::getline(ss, item, ',')) out.push_back(parse_double(trim(item), line));
  if (out.empty()) throw ConfigError("empty value list", line);
  return out;
}

inline std::uint64_t parse_seed(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing text");
    return static_cast<std::uint64_t>(v);
  } catch (const std::exception&) {
    throw ConfigError("cannot parse seed '" + s + "'", line);
  }
}

}  // namespace detail

// Flat, typed key-value format with one [identity] section per check:
//   seed = 24601            # global defaults before the first section
//   samples = 200000
//   output = results.json
//   format = json           # or csv
//   timing = off            # on: wall-clock runtime_ms in reports
//   [po5]
//   a1 = 1.2
//   a2 = 0.8
//   a = 0.4
//   tolerance = 1e-6        # optional per-check override
// Sections may repeat to run one identity at several parameter points.
inline SuiteConfig parse_suite_config(const std::string& text) {
  SuiteConfig cfg;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  int current = -1;  // index into cfg.entries, -1 = global scope
  while (std::getline(in, raw)) {
    ++line_no;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    const std::string line = detail::trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("unterminated section header", line_no);
      const std::string id = detail::trim(line.substr(1, line.size() - 2));
      if (!registry::is_registered(id))
        throw ConfigError("unknown identity '" + id + "'", line_no);
      cfg.entries.push_back(SuiteEntry{id, {}, -1.0});
      current = static_cast<int>(cfg.entries.size()) - 1;
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected 'key = value'", line_no);
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("expected 'key = value'", line_no);

    if (current < 0) {
      if (key == "seed") {
        cfg.seed = detail::parse_seed(value, line_no);
      } else if (key == "samples") {
        const double v = detail::parse_double(value, line_no);
        if (!(v >= 1.0)) throw ConfigError("samples must be >= 1", line_no);
        cfg.samples = static_cast<std::int64_t>(v);
      } else if (key == "output") {
        cfg.output_path = value;
      } else if (key == "format") {
        if (value != "json" && value != "csv")
          throw ConfigError("format must be json or csv", line_no);
        cfg.format = value;
      } else if (key == "timing") {
        if (value == "on" || value == "true")
          cfg.timing = true;
        else if (value == "off" || value == "false")
          cfg.timing = false;
        else
          throw ConfigError("timing must be on or off", line_no);
      } else {
        throw ConfigError("unknown global key '" + key + "'", line_no);
      }
      continue;
    }

    SuiteEntry& entry = cfg.entries[static_cast<std::size_t>(current)];
    if (key == "tolerance") {
      const double tol = detail::parse_double(value, line_no);
      if (!(tol > 0.0)) throw ConfigError("tolerance must be > 0", line_no);
      entry.tolerance = tol;
      continue;
    }
    const registry::IdentityInfo& info = registry::identity_info(entry.id);
    if (std::find(info.keys.begin(), info.keys.end(), key) == info.keys.end())
      throw ConfigError(
          "identity '" + entry.id + "' does not accept parameter '" + key + "'",
          line_no);
    if (key == "seed")
      entry.params[key] = {static_cast<double>(detail::parse_seed(value, line_no))};
    else
      entry.params[key] = detail::parse_list(value, line_no);
  }
  return cfg;
}

inline SuiteConfig load_suite_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_suite_config(ss.str());
}

// Canonical reserialization used for the digest: comments and whitespace do
// not matter, key order within a section does not matter, section order does.
inline std::string canonical_config(const SuiteConfig& cfg) {
  std::string s;
  s += "seed=" + std::to_string(cfg.seed) + "\n";
  s += "samples=" + std::to_string(cfg.samples) + "\n";
  s += "output=" + cfg.output_path + "\n";
  s += "format=" + cfg.format + "\n";
  s += std::string("timing=") + (cfg.timing ? "on" : "off") + "\n";
  for (const SuiteEntry& e : cfg.entries) {
    s += "[" + e.id + "]\n";
    if (e.tolerance > 0.0)
      s += "tolerance=" + report::format_double(e.tolerance) + "\n";
    for (const auto& [key, vals] : e.params) {  // std::map: sorted keys
      s += key + "=";
      for (std::size_t i = 0; i < vals.size(); ++i) {
        if (i) s += ",";
        s += report::format_double(vals[i]);
      }
      s += "\n";
    }
  }
  return s;
}

inline std::string config_digest(const SuiteConfig& cfg) {
  return report::hex64(report::fnv1a64(canonical_config(cfg)));
}

inline nlohmann::ordered_json report_to_json(const report::IdentityReport& rep,
                                             const std::string& error) {
  nlohmann::ordered_json j;
  j["identity_id"] = rep.identity_id;
  j["params_digest"] = rep.params_digest;
  j["lhs"] = {rep.lhs.real(), rep.lhs.imag()};
  j["rhs"] = {rep.rhs.real(), rep.rhs.imag()};
  j["const_fit"] = {rep.const_fit.real(), rep.const_fit.imag()};
  j["ratio"] = {rep.ratio.real(), rep.ratio.imag()};
  j["stderr"] = rep.std_error;
  j["tolerance"] = rep.tolerance;
  j["pass"] = rep.pass;
  j["seed"] = rep.seed;
  j["runtime_ms"] = rep.runtime_ms;
  if (!error.empty()) j["error"] = error;
  return j;
}

inline std::string emit_report(const SuiteResult& result, ReportFormat format) {
  if (format == ReportFormat::csv) {
    std::string s = "identity_id,ratio_re,ratio_im,stderr,pass,runtime_ms\n";
    for (const report::IdentityReport& rep : result.reports) {
      s += rep.identity_id + "," + report::format_double(rep.ratio.real()) +
           "," + report::format_double(rep.ratio.imag()) + "," +
           report::format_double(rep.std_error) + "," +
           (rep.pass ? "true" : "false") + "," +
           std::to_string(rep.runtime_ms) + "\n";
    }
    return s;
  }
  nlohmann::ordered_json j;
  j["tool_version"] = result.tool_version;
  j["config_digest"] = result.config_digest;
  j["summary"] = {{"passed", result.passed},
                  {"failed", result.failed},
                  {"errored", result.errored}};
  j["reports"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < result.reports.size(); ++i)
    j["reports"].push_back(report_to_json(
        result.reports[i], i < result.errors.size() ? result.errors[i] : ""));
  return j.dump(2) + "\n";
}

// Inverse of emit_report(json): reconstructs every serialized field.
inline SuiteResult parse_result(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  SuiteResult out;
  out.tool_version = j.at("tool_version").get<std::string>();
  out.config_digest = j.at("config_digest").get<std::string>();
  out.passed = j.at("summary").at("passed").get<int>();
  out.failed = j.at("summary").at("failed").get<int>();
  out.errored = j.at("summary").at("errored").get<int>();
  for (const auto& rj : j.at("reports")) {
    report::IdentityReport rep;
    rep.identity_id = rj.at("identity_id").get<std::string>();
    rep.params_digest = rj.at("params_digest").get<std::string>();
    auto cplx = [&](const char* key) {
      const auto& arr = rj.at(key);
      return report::Complex(arr.at(0).get<double>(), arr.at(1).get<double>());
    };
    rep.lhs = cplx("lhs");
    rep.rhs = cplx("rhs");
    rep.const_fit = cplx("const_fit");
    rep.ratio = cplx("ratio");
    rep.std_error = rj.at("stderr").get<double>();
    rep.tolerance = rj.at("tolerance").get<double>();
    rep.pass = rj.at("pass").get<bool>();
    rep.seed = rj.at("seed").get<std::uint64_t>();
    rep.runtime_ms = rj.at("runtime_ms").get<std::int64_t>();
    out.reports.push_back(std::move(rep));
    out.errors.push_back(rj.contains("error")
                             ? rj.at("error").get<std::string>()
                             : std::string());
  }
  return out;
}

// Runs every entry in config order, single-threaded, collecting one report
// per entry; an entry that throws still yields a (failed) placeholder row so
// downstream tables keep one row per configured check. Writes the formatted
// result to output_path when set.
inline SuiteResult run_suite(const SuiteConfig& config) {
  SuiteResult out;
  out.config_digest = config_digest(config);
  out.tool_version = kToolVersion;
  for (const SuiteEntry& entry : config.entries) {
    quadrature::McConfig cfg;
    cfg.samples = config.samples;
    cfg.seed = config.seed;
    try {
      report::IdentityReport rep =
          registry::run_identity(entry.id, entry.params, cfg);
      if (entry.tolerance > 0.0) {
        rep.tolerance = entry.tolerance;
        rep.pass = report::pass_rule(rep.ratio, rep.tolerance, rep.std_error,
                                     rep.const_fit, rep.rhs);
      }
      if (!config.timing) rep.runtime_ms = 0;
      if (rep.pass)
        ++out.passed;
      else
        ++out.failed;
      out.reports.push_back(std::move(rep));
      out.errors.emplace_back();
    } catch (const std::exception& ex) {
      report::IdentityReport rep;
      rep.identity_id = entry.id;
      rep.params_digest = report::params_digest(entry.id, entry.params);
      rep.pass = false;
      rep.seed = config.seed;
      rep.runtime_ms = 0;
      ++out.errored;
      out.reports.push_back(std::move(rep));
      out.errors.push_back(ex.what());
    }
  }
  if (!config.output_path.empty()) {
    std::ofstream f(config.output_path, std::ios::binary);
    if (!f)
      throw ConfigError("cannot write output file '" + config.output_path + "'");
    f << emit_report(out, config.format == "csv" ? ReportFormat::csv
                                                 : ReportFormat::json);
  }
  return out;
}

}  // namespace hyperhs::suite
