#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace twisted::verify {

/// One invariant evaluated over a battery of inputs. `value` is the worst
/// observation, in the units `tolerance` is stated in.
struct Check {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<Check> checks;

  bool passed() const;
};

struct VerifyOptions {
  std::uint64_t seed = 20240611;
  /// Flips the sign of one tested quantity in each suite; every suite must
  /// then report a failure.
  bool inject_fault = false;
  int oracle_cells = 2000;
};

const std::vector<std::string>& suite_names();

/// Throws DomainError for an unknown suite.
SuiteResult run_suite(const std::string& name, const VerifyOptions& options = {});
std::vector<SuiteResult> run_all(const VerifyOptions& options = {});

} // namespace twisted::verify
