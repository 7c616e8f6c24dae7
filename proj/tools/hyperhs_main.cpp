// Command-line driver: single checks (`verify`), whole suites (`suite`), and
// a listing of what is registered (`ids`).

#include <cstdlib>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hyperhs/hyperhs.hpp"

namespace {

using hyperhs::report::IdentityReport;
using hyperhs::report::ParamMap;

std::string complex_str(const std::complex<double>& z) {
  return hyperhs::report::format_double(z.real()) +
         (z.imag() < 0 ? " - " : " + ") +
         hyperhs::report::format_double(std::abs(z.imag())) + "i";
}

void print_report(const IdentityReport& rep) {
  std::cout << rep.identity_id << " [" << rep.params_digest << "]\n"
            << "  lhs       = " << complex_str(rep.lhs) << "\n"
            << "  rhs       = " << complex_str(rep.rhs) << "\n"
            << "  const_fit = " << complex_str(rep.const_fit) << "\n"
            << "  ratio     = " << complex_str(rep.ratio)
            << "  (|ratio-1| = "
            << hyperhs::report::format_double(std::abs(rep.ratio - 1.0))
            << ")\n"
            << "  stderr    = " << hyperhs::report::format_double(rep.std_error)
            << "  tolerance = " << hyperhs::report::format_double(rep.tolerance)
            << "  seed = " << rep.seed << "  runtime_ms = " << rep.runtime_ms
            << "\n"
            << "  " << (rep.pass ? "PASS" : "FAIL") << "\n";
}

bool env_seed(std::uint64_t* out) {
  const char* v = std::getenv("HYPERHS_SEED");
  if (v == nullptr || *v == '\0') return false;
  *out = hyperhs::suite::detail::parse_seed(v, 0);
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyperhs: numerical checks of hyperbolic matrix-integral identities"};
  app.set_version_flag("--version", hyperhs::suite::kToolVersion);
  app.require_subcommand(1);

  // --- verify -----------------------------------------------------------
  CLI::App* verify = app.add_subcommand("verify", "run one identity check");
  // The registry key 'h' (stencil step) needs the short -h slot.
  verify->set_help_flag("--help", "print help");
  std::string identity_id;
  verify->add_option("identity", identity_id, "registered identity id")
      ->required();
  // One flag per registry parameter key, shared across identities; values are
  // comma-separated number lists, mirroring the config-file keys one-to-one.
  std::set<std::string> all_keys;
  for (const auto& info : hyperhs::registry::registered_identities())
    for (const std::string& key : info.keys) all_keys.insert(key);
  std::map<std::string, std::string> raw_params;
  for (const std::string& key : all_keys) {
    raw_params[key] = "";
    verify->add_option("--" + key, raw_params[key],
                       "parameter '" + key + "' (comma-separated numbers)");
  }
  double tol_override = -1.0;
  std::string json_path;
  verify->add_option("--tol", tol_override, "override the pass tolerance");
  verify->add_option("--json", json_path, "write the report as JSON to PATH");

  // --- suite ------------------------------------------------------------
  CLI::App* suite_cmd = app.add_subcommand("suite", "run a configured suite");
  std::string config_path;
  suite_cmd->add_option("--config", config_path, "suite configuration file")
      ->required();
  std::string output_override;
  suite_cmd->add_option("--output", output_override,
                        "override the config output path");
  std::string seed_override;
  suite_cmd->add_option("--seed", seed_override, "override the suite seed");

  // --- ids --------------------------------------------------------------
  CLI::App* ids = app.add_subcommand("ids", "list registered identities");

  CLI11_PARSE(app, argc, argv);

  try {
    if (ids->parsed()) {
      for (const auto& info : hyperhs::registry::registered_identities()) {
        std::cout << info.id << "\n  keys: ";
        for (std::size_t i = 0; i < info.keys.size(); ++i)
          std::cout << (i ? ", " : "") << info.keys[i];
        std::cout << "\n  " << info.summary << "\n";
      }
      return 0;
    }

    if (verify->parsed()) {
      ParamMap params;
      for (const auto& [key, value] : raw_params) {
        if (verify->count("--" + key) == 0) continue;
        if (key == "seed")
          params[key] = {static_cast<double>(
              hyperhs::suite::detail::parse_seed(value, 0))};
        else
          params[key] = hyperhs::suite::detail::parse_list(value, 0);
      }
      hyperhs::quadrature::McConfig cfg;
      std::uint64_t env = 0;
      if (env_seed(&env)) cfg.seed = env;  // CLI --seed still wins via params
      IdentityReport rep =
          hyperhs::registry::run_identity(identity_id, params, cfg);
      if (tol_override > 0.0) {
        rep.tolerance = tol_override;
        rep.pass = hyperhs::report::pass_rule(rep.ratio, rep.tolerance,
                                              rep.std_error, rep.const_fit,
                                              rep.rhs);
      }
      print_report(rep);
      if (!json_path.empty()) {
        std::ofstream f(json_path, std::ios::binary);
        if (!f) throw hyperhs::ConfigError("cannot write '" + json_path + "'");
        f << hyperhs::suite::report_to_json(rep, "").dump(2) << "\n";
      }
      return rep.pass ? 0 : 1;
    }

    // suite
    hyperhs::suite::SuiteConfig config =
        hyperhs::suite::load_suite_config(config_path);
    std::uint64_t env = 0;
    if (env_seed(&env)) config.seed = env;
    if (!seed_override.empty())
      config.seed = hyperhs::suite::detail::parse_seed(seed_override, 0);
    if (!output_override.empty()) config.output_path = output_override;
    hyperhs::suite::SuiteResult result = hyperhs::suite::run_suite(config);
    for (std::size_t i = 0; i < result.reports.size(); ++i) {
      const IdentityReport& rep = result.reports[i];
      std::cout << (rep.pass ? "PASS " : (result.errors[i].empty()
                                              ? "FAIL "
                                              : "ERROR"))
                << "  " << rep.identity_id << "  |ratio-1| = "
                << hyperhs::report::format_double(std::abs(rep.ratio - 1.0))
                << "  stderr = "
                << hyperhs::report::format_double(rep.std_error);
      if (!result.errors[i].empty()) std::cout << "  (" << result.errors[i] << ")";
      std::cout << "\n";
    }
    std::cout << "summary: " << result.passed << " passed, " << result.failed
              << " failed, " << result.errored << " errored  [digest "
              << result.config_digest << ", version " << result.tool_version
              << "]\n";
    return (result.failed == 0 && result.errored == 0) ? 0 : 1;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
}
