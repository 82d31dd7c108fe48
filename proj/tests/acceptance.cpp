// One PASS/FAIL line per acceptance criterion; exits non-zero if any fails.

#include "twisted/cli.hpp"
#include "twisted/verify.hpp"

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

using namespace twisted;

namespace {

struct Criterion {
  int id;
  std::string title;
  std::vector<std::string> suites;
  double budget_s; // 0: no runtime bound
};

int failures = 0;

void report(int id, const std::string& title, bool ok, const std::string& detail) {
  std::printf("criterion %d  %-4s  %s%s%s\n", id, ok ? "PASS" : "FAIL", title.c_str(),
              detail.empty() ? "" : "  ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "special-function identities", {"specfun", "turan"}, 30},
      {2, "closed form vs oracle", {"oracle"}, 120},
      {3, "bracket chain", {"bracket"}, 0},
      {4, "minimum at the balanced split", {"theorem"}, 180},
      {5, "random unions stay above the pair", {"echo"}, 0},
      {6, "boundary-gradient signs and monotone ratios", {"signs"}, 0},
      {7, "Lebesgue recovery", {"lebesgue"}, 0},
      {8, "rearrangement inequalities", {"rearrange"}, 0},
  };
  verify::VerifyOptions opt;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    int checks = 0;
    for (const auto& s : c.suites) {
      const auto r = verify::run_suite(s, opt);
      for (const auto& ch : r.checks) {
        ++checks;
        if (!ch.passed) {
          ok = false;
          detail += "[" + s + ": " + ch.name + " value=" + cli::number(ch.value) + " " + ch.detail + "] ";
        }
      }
    }
    const double t = seconds_since(t0);
    char buf[96];
    std::snprintf(buf, sizeof buf, "(%d checks, %.1f s)", checks, t);
    if (c.budget_s > 0 && t > c.budget_s) {
      ok = false;
      detail += "over the " + std::to_string(static_cast<int>(c.budget_s)) + " s budget ";
    }
    report(c.id, c.title, ok, std::string(buf) + (detail.empty() ? "" : " " + detail));
  }

  {
    cli::RunConfig scan;
    scan.seed = 7;
    cli::RunConfig scan_json = scan;
    scan_json.format = cli::Format::json;
    cli::RunConfig ver;
    ver.seed = 7;
    ver.format = cli::Format::json;
    bool ok = true;
    std::string detail;
    for (const auto& [name, cmd, cfg] : {std::tuple{"scan csv", "scan", scan}, std::tuple{"scan json", "scan", scan_json},
                                         std::tuple{"verify json", "verify", ver}}) {
      const auto a = cli::dispatch(cmd, cfg), b = cli::dispatch(cmd, cfg);
      const bool same = a.exit_code == b.exit_code && a.output == b.output && !a.output.empty();
      if (!same) {
        ok = false;
        detail += std::string(name) + " differs; ";
      }
    }
    report(9, "byte-identical reruns", ok, detail);
  }
  std::printf("%s\n", failures == 0 ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return failures == 0 ? 0 : 1;
}
