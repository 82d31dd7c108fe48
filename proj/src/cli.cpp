#include "twisted/cli.hpp"

#include "twisted/closedform.hpp"
#include "twisted/errors.hpp"
#include "twisted/oracle.hpp"
#include "twisted/shapeopt.hpp"
#include "twisted/verify.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

namespace twisted::cli {

using nlohmann::json;

std::string number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

double parse_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != v.size()) throw DomainError(key + ": not a number: '" + v + "'");
  return x;
}

long long parse_int(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  long long x = 0;
  try {
    x = std::stoll(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != v.size()) throw DomainError(key + ": not an integer: '" + v + "'");
  return x;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

Format output_format(const RunConfig& cfg) { return cfg.format.value_or(Format::csv); }

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

json solution_json(const closedform::TwistedSolution& s, const measures::PairConfig& p) {
  return {{"L", p.left},
          {"R", p.right},
          {"mass_left", p.mass_left},
          {"mass_right", p.mass_right},
          {"lambda", s.lambda},
          {"nu", s.nu},
          {"alpha", s.alpha},
          {"wavenumber", s.wavenumber},
          {"A", s.amp_left},
          {"B", s.amp_right},
          {"c", s.nonlocal_c},
          {"du_left", s.du_left},
          {"du_right", s.du_right},
          {"dirichlet_left", s.dirichlet_left},
          {"dirichlet_right", s.dirichlet_right},
          {"bracket_lo", s.bracket_lo},
          {"bracket_hi", s.bracket_hi},
          {"symmetric", s.symmetric},
          {"profiles_monotone", s.profiles_monotone},
          {"normalization", s.normalization}};
}

const std::vector<std::string> kSolveColumns = {
    "L",        "R",          "mass_left",       "mass_right",     "lambda",     "nu",
    "alpha",    "wavenumber", "A",               "B",              "c",          "du_left",
    "du_right", "dirichlet_left", "dirichlet_right", "bracket_lo", "bracket_hi", "symmetric",
    "profiles_monotone", "normalization"};

std::string csv_cell(const json& v) {
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  if (v.is_number()) return number(v.get<double>());
  if (v.is_null()) return "nan";
  return csv_quote(v.get<std::string>());
}

} // namespace

measures::MeasureSpec RunConfig::measure_spec() const {
  if (tol && !(*tol > 0.0)) throw DomainError("tol must be > 0");
  if (measure == "gaussian") return measures::MeasureSpec::gaussian(n);
  if (measure == "power") return measures::MeasureSpec::power(n, k);
  throw DomainError("unknown measure '" + measure + "' (expected gaussian or power)");
}

measures::PairConfig RunConfig::pair() const {
  const auto m = measure_spec();
  const bool explicit_radii = left.has_value() || right.has_value();
  if (explicit_radii && split) throw DomainError("give either --split or --L/--R, not both");
  if (explicit_radii) {
    if (!left || !right) throw DomainError("--L and --R must be given together");
    return measures::config_from_params(m, *left, *right);
  }
  return measures::config_from_split(m, mass, split.value_or(0.5));
}

json RunConfig::to_json() const {
  json j = {{"measure", measure}, {"n", n},       {"k", k},         {"mass", mass},
            {"out", out},         {"seed", seed}, {"suite", suite}, {"inject_fault", inject_fault}};
  j["split"] = split ? json(*split) : json(nullptr);
  j["L"] = left ? json(*left) : json(nullptr);
  j["R"] = right ? json(*right) : json(nullptr);
  j["grid"] = grid ? json(*grid) : json(nullptr);
  j["tol"] = tol ? json(*tol) : json(nullptr);
  j["format"] = format ? json(*format == Format::csv ? "csv" : "json") : json(nullptr);
  return j;
}

RunConfig RunConfig::from_json(const json& j) {
  RunConfig c;
  c.measure = j.at("measure").get<std::string>();
  c.n = j.at("n").get<int>();
  c.k = j.at("k").get<double>();
  c.mass = j.at("mass").get<double>();
  c.out = j.at("out").get<std::string>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.suite = j.at("suite").get<std::string>();
  c.inject_fault = j.at("inject_fault").get<bool>();
  auto opt = [&j](const char* key) {
    return j.at(key).is_null() ? std::optional<double>{} : std::optional<double>{j.at(key).get<double>()};
  };
  c.split = opt("split");
  c.left = opt("L");
  c.right = opt("R");
  c.tol = opt("tol");
  if (!j.at("grid").is_null()) c.grid = j.at("grid").get<int>();
  if (!j.at("format").is_null()) c.format = j.at("format").get<std::string>() == "json" ? Format::json : Format::csv;
  return c;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "measure") {
    cfg.measure = value;
  } else if (key == "n") {
    cfg.n = static_cast<int>(parse_int(key, value));
  } else if (key == "k") {
    cfg.k = parse_double(key, value);
  } else if (key == "mass") {
    cfg.mass = parse_double(key, value);
  } else if (key == "split") {
    cfg.split = parse_double(key, value);
  } else if (key == "L") {
    cfg.left = parse_double(key, value);
  } else if (key == "R") {
    cfg.right = parse_double(key, value);
  } else if (key == "grid") {
    cfg.grid = static_cast<int>(parse_int(key, value));
  } else if (key == "tol") {
    cfg.tol = parse_double(key, value);
  } else if (key == "out") {
    cfg.out = value;
  } else if (key == "format") {
    if (value == "csv") {
      cfg.format = Format::csv;
    } else if (value == "json") {
      cfg.format = Format::json;
    } else {
      throw DomainError("format must be csv or json");
    }
  } else if (key == "seed") {
    const long long s = parse_int(key, value);
    if (s < 0) throw DomainError("seed must be >= 0");
    cfg.seed = static_cast<std::uint64_t>(s);
  } else if (key == "suite") {
    cfg.suite = value;
  } else if (key == "inject_fault") {
    cfg.inject_fault = value == "1" || value == "true";
  } else {
    throw DomainError("unknown setting '" + key + "'");
  }
}

RunConfig parse_config_text(const std::string& text, RunConfig base) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw DomainError("config line " + std::to_string(lineno) + ": expected key=value");
    }
    apply_setting(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return base;
}

Outcome run_solve(const RunConfig& cfg) {
  const auto p = cfg.pair();
  const auto s = closedform::twisted_pair(p);
  const json rec = solution_json(s, p);
  Outcome o;
  if (output_format(cfg) == Format::json) {
    o.output = json{{"config", cfg.to_json()}, {"measure", p.measure.describe()}, {"solution", rec}}.dump(2) + "\n";
  } else {
    std::string head, row;
    for (const auto& col : kSolveColumns) {
      head += (head.empty() ? "" : ",") + col;
      row += (row.empty() ? "" : ",") + csv_cell(rec.at(col));
    }
    o.output = head + "\n" + row + "\n";
  }
  if (!s.profiles_monotone) o.diagnostics = "note: a component profile changes sign (more than two nodal domains)\n";
  return o;
}

Outcome run_scan(const RunConfig& cfg) {
  const auto m = cfg.measure_spec();
  const int points = cfg.grid.value_or(41);
  if (points < 1) throw DomainError("scan: empty grid (--grid must be >= 1)");
  const auto curve = shapeopt::scan(m, cfg.mass, shapeopt::default_grid(m, cfg.mass, points));
  shapeopt::CertifyTolerances tol;
  tol.fd_abs = cfg.tol.value_or(1e-4);
  const auto rep = shapeopt::certify_minimum(curve, tol);

  Outcome o;
  const std::size_t n = curve.splits.size();
  if (output_format(cfg) == Format::json) {
    json rows = json::array();
    for (std::size_t i = 0; i < n; ++i) {
      rows.push_back({{"s", curve.splits[i]},
                      {"L", curve.left[i]},
                      {"R", curve.right[i]},
                      {"lambda", curve.lambdas[i]},
                      {"dlambda_ds_analytic", curve.derivative_analytic[i]},
                      {"dlambda_ds_fd", curve.derivative_fd[i]},
                      {"c", curve.nonlocal_c[i]},
                      {"du_left", curve.du_left[i]},
                      {"du_right", curve.du_right[i]}});
    }
    json cert = {{"passed", rep.passed},
                 {"minimum_at_half", rep.minimum_at_half},
                 {"symmetric", rep.symmetric},
                 {"sign_pattern", rep.sign_pattern},
                 {"monotone_interior", rep.monotone_interior},
                 {"golden_near_half", rep.golden_near_half},
                 {"derivative_agreement", rep.derivative_agreement},
                 {"two_nodal_domains", rep.two_nodal_domains},
                 {"max_asymmetry", rep.max_asymmetry},
                 {"max_fd_gap", rep.max_fd_gap},
                 {"golden_split", rep.golden_split},
                 {"counterexamples", rep.counterexamples}};
    o.output = json{{"config", cfg.to_json()},
                    {"measure", m.describe()},
                    {"total_mass", cfg.mass},
                    {"window", {curve.window.lo, curve.window.hi}},
                    {"rows", rows},
                    {"certify", cert}}
                   .dump(2) +
               "\n";
  } else {
    std::string out = "s,L,R,lambda,dlambda_ds_analytic,dlambda_ds_fd,c,du_left,du_right\n";
    for (std::size_t i = 0; i < n; ++i) {
      out += number(curve.splits[i]) + "," + number(curve.left[i]) + "," + number(curve.right[i]) + "," +
             number(curve.lambdas[i]) + "," + number(curve.derivative_analytic[i]) + "," +
             number(curve.derivative_fd[i]) + "," + number(curve.nonlocal_c[i]) + "," +
             number(curve.du_left[i]) + "," + number(curve.du_right[i]) + "\n";
    }
    o.output = out;
  }
  std::string diag = rep.passed ? "certify_minimum: PASS\n" : "certify_minimum: FAIL\n";
  for (const auto& c : rep.counterexamples) diag += "  " + c + "\n";
  o.diagnostics = diag;
  if (!rep.passed) o.exit_code = 3;
  return o;
}

Outcome run_verify(const RunConfig& cfg) {
  verify::VerifyOptions opt;
  opt.seed = cfg.seed;
  opt.inject_fault = cfg.inject_fault;
  opt.oracle_cells = cfg.grid.value_or(2000);
  std::vector<verify::SuiteResult> results;
  if (cfg.suite.empty()) {
    results = verify::run_all(opt);
  } else {
    results.push_back(verify::run_suite(cfg.suite, opt));
  }
  bool all = true;
  for (const auto& r : results) all = all && r.passed();

  std::string table;
  char buf[512];
  for (const auto& r : results) {
    for (const auto& c : r.checks) {
      std::snprintf(buf, sizeof buf, "%-4s  %-10s  %-66s  %12.4g  %10.3g  %s\n", c.passed ? "PASS" : "FAIL",
                    r.suite.c_str(), c.name.c_str(), c.value, c.tolerance, c.detail.c_str());
      table += buf;
    }
  }
  table += all ? "all checks passed\n" : "some checks FAILED\n";

  Outcome o;
  o.exit_code = all ? 0 : 1;
  if (cfg.format == Format::json) {
    json suites = json::array();
    for (const auto& r : results) {
      json checks = json::array();
      for (const auto& c : r.checks) {
        checks.push_back({{"name", c.name},
                          {"passed", c.passed},
                          {"value", c.value},
                          {"tolerance", c.tolerance},
                          {"detail", c.detail}});
      }
      suites.push_back({{"suite", r.suite}, {"passed", r.passed()}, {"checks", checks}});
    }
    o.output = json{{"config", cfg.to_json()}, {"passed", all}, {"suites", suites}}.dump(2) + "\n";
    o.diagnostics = table;
  } else if (cfg.format == Format::csv) {
    std::string out = "suite,check,status,value,tolerance,detail\n";
    for (const auto& r : results) {
      for (const auto& c : r.checks) {
        out += r.suite + "," + csv_quote(c.name) + "," + (c.passed ? "PASS" : "FAIL") + "," + number(c.value) +
               "," + number(c.tolerance) + "," + csv_quote(c.detail) + "\n";
      }
    }
    o.output = out;
    o.diagnostics = table;
  } else {
    o.output = table;
  }
  return o;
}

Outcome run_oracle(const RunConfig& cfg) {
  const auto p = cfg.pair();
  const int cells = cfg.grid.value_or(2000);
  if (cells < 2) throw DomainError("oracle: --grid must be >= 2 cells");
  const double tol = cfg.tol.value_or(1e-3);
  const auto s = closedform::twisted_pair(p);
  const auto dom = oracle::pair_domain(p);
  const oracle::GridSpec grid{cells, static_cast<std::size_t>(2 * cells)};
  const auto t = oracle::twisted_eig(dom, grid);
  const auto d = oracle::dirichlet_eigs(dom, grid, 2);
  const double gap = std::abs(s.lambda - t.eigenvalues[0]) / s.lambda;
  const bool ok = gap <= tol;

  const json rec = {{"L", p.left},
                    {"R", p.right},
                    {"lambda_closed", s.lambda},
                    {"lambda_oracle", t.eigenvalues[0]},
                    {"relative_gap", gap},
                    {"dirichlet_1", d.eigenvalues[0]},
                    {"dirichlet_2", d.eigenvalues[1]},
                    {"nodes", t.grid_size},
                    {"residual", t.residuals[0]},
                    {"passed", ok}};
  Outcome o;
  o.exit_code = ok ? 0 : 3;
  if (output_format(cfg) == Format::json) {
    o.output = json{{"config", cfg.to_json()}, {"measure", p.measure.describe()}, {"comparison", rec}}.dump(2) + "\n";
  } else {
    const std::vector<std::string> cols = {"L",           "R",           "lambda_closed", "lambda_oracle",
                                           "relative_gap", "dirichlet_1", "dirichlet_2",  "nodes",
                                           "residual",    "passed"};
    std::string head, row;
    for (const auto& c : cols) {
      head += (head.empty() ? "" : ",") + c;
      row += (row.empty() ? "" : ",") + csv_cell(rec.at(c));
    }
    o.output = head + "\n" + row + "\n";
  }
  if (!ok) o.diagnostics = "oracle: relative gap " + number(gap) + " exceeds " + number(tol) + "\n";
  return o;
}

Outcome dispatch(const std::string& command, const RunConfig& cfg) {
  try {
    if (command == "solve") return run_solve(cfg);
    if (command == "scan") return run_scan(cfg);
    if (command == "verify") return run_verify(cfg);
    if (command == "oracle") return run_oracle(cfg);
    return {2, "", "unknown command '" + command + "'\n"};
  } catch (const DomainError& e) {
    return {2, "", std::string("error: ") + e.what() + "\n"};
  } catch (const NumericalError& e) {
    return {3, "", std::string("numerical failure: ") + e.what() + "\n"};
  }
}

} // namespace twisted::cli
