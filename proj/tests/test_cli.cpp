#include "doctest.h"
#include "gen.hpp"

#include "twisted/cli.hpp"
#include "twisted/errors.hpp"
#include "twisted/verify.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

using namespace twisted;
using namespace twisted::cli;
using nlohmann::json;

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string l;
  while (std::getline(ss, l)) out.push_back(l);
  return out;
}

} // namespace

TEST_CASE("config text: comments, overrides and errors") {
  const auto cfg = parse_config_text("# pair\nmeasure = power\nn=3\n\nk=2\nmass=2\nsplit=0.4\nformat=json\n");
  CHECK(cfg.measure == "power");
  CHECK(cfg.n == 3);
  CHECK(cfg.k == 2.0);
  CHECK(cfg.split == 0.4);
  CHECK(cfg.format == Format::json);
  auto over = cfg;
  apply_setting(over, "split", "0.5");
  CHECK(over.split == 0.5);
  CHECK_THROWS_AS(parse_config_text("bogus=1\n"), DomainError);
  CHECK_THROWS_AS(parse_config_text("n\n"), DomainError);
  CHECK_THROWS_AS(parse_config_text("mass=abc\n"), DomainError);
  CHECK_THROWS_AS(parse_config_text("format=xml\n"), DomainError);
}

TEST_CASE("property: RunConfig JSON round trip") {
  testgen::Gen g(81);
  for (int i = 0; i < 100; ++i) {
    RunConfig c;
    c.measure = g.integer(0, 1) ? "gaussian" : "power";
    c.n = g.integer(1, 5);
    c.k = g.uniform(0, 3);
    c.mass = g.scale(1e-3, 10);
    if (g.integer(0, 1)) c.split = g.uniform(0, 1);
    if (g.integer(0, 1)) {
      c.left = g.uniform(0, 2);
      c.right = g.uniform(0, 2);
    }
    if (g.integer(0, 1)) c.grid = g.integer(1, 5000);
    if (g.integer(0, 1)) c.tol = g.scale(1e-12, 1e-2);
    if (g.integer(0, 1)) c.format = g.integer(0, 1) ? Format::csv : Format::json;
    c.seed = static_cast<std::uint64_t>(g.integer(0, 1 << 30));
    c.inject_fault = g.integer(0, 1) == 1;
    const auto back = RunConfig::from_json(json::parse(c.to_json().dump()));
    CHECK(back == c);
  }
}

TEST_CASE("solve: symmetric gaussian record has c = 0") {
  RunConfig c;
  c.split = 0.5;
  const auto o = dispatch("solve", c);
  REQUIRE(o.exit_code == 0);
  const auto rows = lines(o.output);
  REQUIRE(rows.size() == 2);
  const auto head = split_line(rows[0]), vals = split_line(rows[1]);
  REQUIRE(head.size() == vals.size());
  for (std::size_t i = 0; i < head.size(); ++i) {
    if (head[i] == "c") CHECK(std::stod(vals[i]) == 0.0);
    if (head[i] == "lambda") CHECK(std::abs(std::stod(vals[i]) - 3.258416955) < 1e-8);
  }
}

TEST_CASE("solve: two unit half-balls give pi^2, JSON re-parses") {
  RunConfig c;
  c.measure = "power";
  c.n = 3;
  c.left = 1.0;
  c.right = 1.0;
  c.format = Format::json;
  const auto o = dispatch("solve", c);
  REQUIRE(o.exit_code == 0);
  const auto j = json::parse(o.output);
  CHECK(std::abs(j["solution"]["lambda"].get<double>() - std::numbers::pi * std::numbers::pi) < 1e-9);
  CHECK(RunConfig::from_json(j["config"]) == c);
}

TEST_CASE("domain and usage errors exit 2") {
  RunConfig c;
  c.measure = "power";
  c.n = 1;
  c.k = 0.5;
  auto o = dispatch("solve", c);
  CHECK(o.exit_code == 2);
  CHECK(o.diagnostics.find("requires n+k>2") != std::string::npos);
  RunConfig s;
  s.grid = 0;
  CHECK(dispatch("scan", s).exit_code == 2);
  CHECK(dispatch("nope", s).exit_code == 2);
  RunConfig t;
  t.tol = -1.0;
  CHECK(dispatch("solve", t).exit_code == 2);
  RunConfig both;
  both.split = 0.4;
  both.left = 1.0;
  both.right = 1.0;
  CHECK(dispatch("solve", both).exit_code == 2);
}

TEST_CASE("scan: 41 rows, minimum at one half, deterministic") {
  RunConfig c;
  const auto a = dispatch("scan", c);
  REQUIRE(a.exit_code == 0);
  const auto rows = lines(a.output);
  REQUIRE(rows.size() == 42);
  CHECK(rows[0] == "s,L,R,lambda,dlambda_ds_analytic,dlambda_ds_fd,c,du_left,du_right");
  double best = INFINITY, at = -1;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto v = split_line(rows[i]);
    if (std::stod(v[3]) < best) {
      best = std::stod(v[3]);
      at = std::stod(v[0]);
    }
  }
  CHECK(at == 0.5);
  CHECK(dispatch("scan", c).output == a.output);
  c.format = Format::json;
  const auto j = json::parse(dispatch("scan", c).output);
  CHECK(j["rows"].size() == 41);
  CHECK(j["certify"]["passed"].get<bool>());
}

TEST_CASE("verify: filtering, JSON and injected faults") {
  RunConfig c;
  c.suite = "turan";
  auto o = dispatch("verify", c);
  CHECK(o.exit_code == 0);
  for (const auto& l : lines(o.output)) {
    if (l.rfind("PASS", 0) == 0 || l.rfind("FAIL", 0) == 0) CHECK(l.find("turan") != std::string::npos);
  }
  c.format = Format::json;
  const auto j = json::parse(dispatch("verify", c).output);
  CHECK(j["suites"].size() == 1);
  CHECK(j["passed"].get<bool>());
  c.inject_fault = true;
  c.format.reset();
  o = dispatch("verify", c);
  CHECK(o.exit_code != 0);
  CHECK(o.output.find("FAIL  turan") != std::string::npos);
  c.suite = "nope";
  CHECK(dispatch("verify", c).exit_code == 2);
}

TEST_CASE("oracle comparison") {
  RunConfig c;
  c.split = 0.4;
  c.grid = 1000;
  const auto o = dispatch("oracle", c);
  CHECK(o.exit_code == 0);
  c.tol = 1e-15;
  CHECK(dispatch("oracle", c).exit_code == 3);
}

TEST_CASE("numbers serialize at 17 digits") {
  CHECK(number(0.1) == "0.10000000000000001");
  CHECK(std::stod(number(std::numbers::pi)) == std::numbers::pi);
}

TEST_CASE("every fast suite notices an injected fault") {
  verify::VerifyOptions opt;
  opt.inject_fault = true;
  opt.oracle_cells = 400;
  for (const auto& name : verify::suite_names()) {
    if (name == "theorem") continue; // slow
    CAPTURE(name);
    CHECK_FALSE(verify::run_suite(name, opt).passed());
  }
}
