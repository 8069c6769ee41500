// Command-line driver for the certification suites.
//
//   speclab run            execute a suite and write the JSON/CSV report
//   speclab default-config print the documented reference configuration
//   speclab validate       check a configuration file
//
// Exit codes: 0 success, 1 claim failure, 2 invalid configuration,
// 3 internal error.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "speclab/report.hpp"
#include "speclab/suites.hpp"

namespace {

int run_command(const std::string& config_path, const std::string& suite_override,
                const std::string& out_override, std::int64_t seed_override,
                int workers_override) {
  speclab::json user = speclab::json::object();
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "error: cannot open config '" << config_path << "'\n";
      return 2;
    }
    try {
      in >> user;
    } catch (const std::exception& e) {
      std::cerr << "error: invalid JSON in '" << config_path << "': " << e.what() << "\n";
      return 2;
    }
  }
  if (!suite_override.empty()) user["suite"] = suite_override;
  if (!out_override.empty()) user["out_dir"] = out_override;
  if (seed_override >= 0) user["seed"] = static_cast<std::uint64_t>(seed_override);
  if (workers_override > 0) user["workers"] = workers_override;

  speclab::ExperimentConfig cfg = speclab::parse_config(user);
  speclab::CertificationReport report = speclab::run_suite(cfg);
  const auto files = speclab::emit_report(report, cfg.out_dir);

  int failed = 0;
  for (const auto& claim : report.claims) {
    std::printf("%-26s %-12s %s\n", claim.id.c_str(), claim.suite.c_str(),
                claim.verdict.c_str());
    if (!claim.ok()) ++failed;
  }
  std::printf("report: %s (%zu files, config %s)\n", files.front().c_str(), files.size(),
              report.config_hash.c_str());
  if (failed > 0) {
    std::printf("%d claim(s) failed\n", failed);
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical certification suites for shift-operator spectral diagnostics"};
  app.require_subcommand(1);

  std::string config_path, suite, out_dir;
  std::int64_t seed = -1;
  int workers = 0;

  CLI::App* run = app.add_subcommand("run", "execute a suite and emit the report");
  run->add_option("--config", config_path, "JSON configuration file");
  run->add_option("--suite", suite, "suite selector (overrides config)")
      ->check(CLI::IsMember(speclab::known_suites()));
  run->add_option("--out", out_dir, "output directory (overrides config)");
  run->add_option("--seed", seed, "random seed (overrides config)");
  run->add_option("--workers", workers, "parallel claim workers (overrides config)");

  CLI::App* defaults = app.add_subcommand("default-config", "print the reference configuration");

  CLI::App* validate = app.add_subcommand("validate", "validate a configuration file");
  std::string validate_path;
  validate->add_option("--config", validate_path, "JSON configuration file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (defaults->parsed()) {
      std::cout << speclab::default_config_json().dump(2) << "\n";
      return 0;
    }
    if (validate->parsed()) {
      try {
        speclab::ExperimentConfig cfg = speclab::parse_config_file(validate_path);
        std::cout << "ok: suite=" << cfg.suite << " seed=" << cfg.seed
                  << " hash=" << cfg.config_hash() << "\n";
        return 0;
      } catch (const speclab::ConfigError& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return 2;
      }
    }
    return run_command(config_path, suite, out_dir, seed, workers);
  } catch (const speclab::ConfigError& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
