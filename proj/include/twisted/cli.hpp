#pragma once

#include "twisted/measures.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace twisted::cli {

enum class Format { csv, json };

/// Everything a subcommand reads. Unset optionals take per-command defaults:
/// grid is the scan point count (41), the oracle cell count per interval
/// (2000) or the verify oracle resolution (2000); tol is the oracle agreement
/// bound (1e-3) or the scan derivative bound (1e-4).
struct RunConfig {
  std::string measure = "gaussian";
  int n = 1;
  double k = 0.0;
  double mass = 0.5;
  std::optional<double> split;
  std::optional<double> left;
  std::optional<double> right;
  std::optional<int> grid;
  std::optional<double> tol;
  std::string out;
  std::optional<Format> format;
  std::uint64_t seed = 20240611;
  std::string suite;
  bool inject_fault = false;

  /// Throws DomainError on unknown measures or bad tolerances.
  measures::MeasureSpec measure_spec() const;
  /// Pair from --split (with --mass) or from --L/--R.
  measures::PairConfig pair() const;

  nlohmann::json to_json() const;
  static RunConfig from_json(const nlohmann::json& j);

  bool operator==(const RunConfig&) const = default;
};

/// Applies `key=value` lines (blank lines and `#` comments skipped) on top of
/// `base`. Keys mirror the long flags: measure n k mass split L R grid tol out
/// format seed suite inject_fault.
RunConfig parse_config_text(const std::string& text, RunConfig base = {});
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

struct Outcome {
  int exit_code = 0;
  std::string output;      // csv, json or a text table
  std::string diagnostics; // for stderr
};

Outcome run_solve(const RunConfig& cfg);
Outcome run_scan(const RunConfig& cfg);
Outcome run_verify(const RunConfig& cfg);
Outcome run_oracle(const RunConfig& cfg);

/// Runs one of solve | scan | verify | oracle, mapping library errors to exit
/// codes (2 domain, 3 numerical).
Outcome dispatch(const std::string& command, const RunConfig& cfg);

/// %.17g.
std::string number(double x);

} // namespace twisted::cli
