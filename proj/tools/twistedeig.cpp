#include "twisted/cli.hpp"
#include "twisted/errors.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

int main(int argc, char** argv) {
  CLI::App app{"First twisted eigenvalues of weighted Laplacians"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_subcommand("solve", "closed-form eigenpair for one pair");
  app.add_subcommand("scan", "lambda over the mass split, with shape derivatives");
  app.add_subcommand("verify", "run the invariant suites");
  app.add_subcommand("oracle", "closed form against the finite-difference oracle");

  // Kept as strings so config-file values and flags share one parser.
  const std::vector<std::pair<std::string, std::string>> flags = {
      {"measure", "gaussian | power"},
      {"n", "dimension"},
      {"k", "power exponent"},
      {"mass", "total mass"},
      {"split", "left share of the mass"},
      {"L", "left offset or radius"},
      {"R", "right offset or radius"},
      {"grid", "scan points / oracle cells per interval"},
      {"tol", "agreement tolerance"},
      {"out", "output file"},
      {"format", "csv | json"},
      {"seed", "seed for randomized suites"},
      {"suite", "single verify suite"},
  };
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> opts;
  for (const auto& [key, help] : flags) opts[key] = app.add_option("--" + key, values[key], help);
  std::string config_path;
  app.add_option("--config", config_path, "file of key=value lines; flags override");
  bool fault = false;
  app.add_flag("--inject-fault", fault, "flip a sign in every verify suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  twisted::cli::RunConfig cfg;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw twisted::DomainError("cannot read config file " + config_path);
      std::stringstream ss;
      ss << in.rdbuf();
      cfg = twisted::cli::parse_config_text(ss.str(), cfg);
    }
    for (const auto& [key, opt] : opts) {
      if (opt->count() > 0) twisted::cli::apply_setting(cfg, key, values[key]);
    }
    if (fault) cfg.inject_fault = true;
  } catch (const twisted::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  const auto result = twisted::cli::dispatch(command, cfg);
  if (!result.output.empty()) {
    if (cfg.out.empty()) {
      std::cout << result.output;
    } else {
      std::ofstream f(cfg.out, std::ios::binary);
      if (!f) {
        std::cerr << "error: cannot write " << cfg.out << "\n";
        return 2;
      }
      f << result.output;
    }
  }
  std::cerr << result.diagnostics;
  return result.exit_code;
}
