// Copyright 2026 The smcpriv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "smcpriv/config.hpp"
#include "smcpriv/csv.hpp"
#include "smcpriv/leakage.hpp"
#include "smcpriv/optimize.hpp"
#include "smcpriv/randomize.hpp"

namespace {

using namespace smcpriv;

struct Args {
  std::string scenario_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::string precision = "double";
  std::optional<std::string> alpha;
  std::optional<Value> delta_max;
  std::optional<double> epsilon;
  std::optional<int> starts;
  unsigned threads = 0;
};

void add_common_flags(CLI::App* cmd, Args& args) {
  cmd->add_option("--scenario", args.scenario_path, "scenario file (JSON)")
      ->required();
  cmd->add_option("--out", args.out_dir, "output directory");
  cmd->add_option("--seed", args.seed, "solver RNG seed");
  cmd->add_option("--precision", args.precision,
                  "entropy kernel precision: double|extended")
      ->check(CLI::IsMember({"double", "extended"}));
  cmd->add_option("--alpha", args.alpha, "entropy order override (real or 'inf')");
  cmd->add_option("--delta-max", args.delta_max,
                  "distortion bound for the optimizer");
  cmd->add_option("--epsilon", args.epsilon, "optimizer accuracy");
  cmd->add_option("--starts", args.starts, "basin-hopping start count");
  cmd->add_option("--threads", args.threads, "worker threads (0 = auto)");
}

Precision precision_of(const Args& args) {
  return args.precision == "extended" ? Precision::Extended
                                      : Precision::DoubleLogspace;
}

LoadedConfig load_with_overrides(const Args& args) {
  LoadedConfig cfg = load_scenario(args.scenario_path);
  if (args.alpha) {
    cfg.scenario.order = EntropyOrder::parse(*args.alpha);
    cfg.scenario.validate();
  }
  if (args.seed) cfg.knobs.seed = *args.seed;
  if (args.starts) cfg.knobs.n_starts = *args.starts;
  if (args.delta_max) cfg.delta_max = *args.delta_max;
  if (args.epsilon) cfg.epsilon = *args.epsilon;
  cfg.knobs.threads = args.threads;
  return cfg;
}

std::string out_path(const Args& args, const std::string& name) {
  std::filesystem::create_directories(args.out_dir);
  return (std::filesystem::path(args.out_dir) / name).string();
}

std::string hash_comment(const LoadedConfig& cfg, const Args& args) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "config_hash=%016" PRIx64 " precision=%s",
                cfg.config_hash, args.precision.c_str());
  return buf;
}

std::vector<std::string> x_columns(const ScenarioSpec& s) {
  std::vector<std::string> cols;
  for (const std::string& n : s.attackers.names) cols.push_back("x_" + n);
  return cols;
}

std::vector<std::string> x_cells(const Tuple& t) {
  std::vector<std::string> cells;
  for (Value v : t) cells.push_back(std::to_string(v));
  return cells;
}

const ApproximationSpec& require_approximation(const LoadedConfig& cfg) {
  if (!cfg.approximation)
    throw ConfigError("scenario file declares no approximation block");
  return *cfg.approximation;
}

OptProblem build_problem(const LoadedConfig& cfg) {
  if (!cfg.delta_max)
    throw ConfigError(
        "no distortion bound: set optimize.delta or pass --delta-max");
  if (!cfg.epsilon)
    throw ConfigError("no accuracy: set optimize.epsilon or pass --epsilon");
  return make_problem(cfg.scenario, *cfg.delta_max, *cfg.epsilon, cfg.knobs);
}

int cmd_profile(const Args& args) {
  LoadedConfig cfg = load_with_overrides(args);
  LeakageOptions opts{precision_of(args), 100000000, args.threads};
  LeakageProfile profile = awae(cfg.scenario, opts);

  CsvWriter csv(out_path(args, "profile.csv"));
  csv.comment(hash_comment(cfg, args));
  std::vector<std::string> cols = x_columns(cfg.scenario);
  cols.push_back("entropy");
  csv.header(cols);
  for (const auto& e : profile.entries) {
    std::vector<std::string> cells = x_cells(e.x_a);
    cells.push_back(CsvWriter::fmt(e.entropy));
    csv.row(cells);
  }
  std::printf("profile: %zu attacker inputs written\n",
              profile.entries.size());
  return 0;
}

int cmd_randomize(const Args& args) {
  LoadedConfig cfg = load_with_overrides(args);
  const ApproximationSpec& approx = require_approximation(cfg);
  if (cfg.pi_phis.empty())
    throw ConfigError("approximation block declares no pi_phi distribution");
  LeakageOptions opts{precision_of(args), 100000000, args.threads};

  for (std::size_t i = 0; i < cfg.pi_phis.size(); ++i) {
    GainReport report = gamma(cfg.scenario, approx, cfg.pi_phis[i], opts);
    CsvWriter csv(out_path(args, "randomize_" + std::to_string(i) + ".csv"));
    csv.comment(hash_comment(cfg, args));
    std::vector<std::string> cols = x_columns(cfg.scenario);
    cols.insert(cols.end(), {"baseline", "randomized", "gamma", "upper_bound"});
    csv.header(cols);
    for (const auto& row : report.rows) {
      std::vector<std::string> cells = x_cells(row.x_a);
      cells.push_back(CsvWriter::fmt(row.baseline));
      cells.push_back(CsvWriter::fmt(row.randomized));
      cells.push_back(CsvWriter::fmt(row.gamma));
      cells.push_back(CsvWriter::fmt(row.baseline + report.h_alpha_phi));
      csv.row(cells);
    }
    std::printf("randomize: distribution %zu, H_alpha(pi_phi)=%s\n", i,
                CsvWriter::fmt(report.h_alpha_phi).c_str());
  }
  return 0;
}

int cmd_verify(const Args& args) {
  LoadedConfig cfg = load_with_overrides(args);
  const ApproximationSpec& approx = require_approximation(cfg);
  if (cfg.pi_phis.empty())
    throw ConfigError("approximation block declares no pi_phi distribution");
  LeakageOptions opts{precision_of(args), 100000000, args.threads};

  CsvWriter csv(out_path(args, "verify.csv"));
  csv.comment(hash_comment(cfg, args));
  std::vector<std::string> cols{"dist"};
  for (const std::string& c : x_columns(cfg.scenario)) cols.push_back(c);
  cols.insert(cols.end(), {"baseline", "randomized", "gamma", "h_alpha",
                           "close", "lower_ok", "upper_ok"});
  csv.header(cols);

  bool any_violation = false;
  for (std::size_t i = 0; i < cfg.pi_phis.size(); ++i) {
    BoundsReport report =
        verify_bounds(cfg.scenario, approx, cfg.pi_phis[i], opts);
    any_violation |= !report.lower_ok || !report.upper_ok;
    for (const auto& row : report.gains.rows) {
      std::vector<std::string> cells{std::to_string(i)};
      for (const std::string& c : x_cells(row.x_a)) cells.push_back(c);
      bool lower_ok = row.gamma >= -report.tolerance;
      bool upper_ok =
          !report.close ||
          row.gamma <= report.gains.h_alpha_phi + report.tolerance;
      cells.push_back(CsvWriter::fmt(row.baseline));
      cells.push_back(CsvWriter::fmt(row.randomized));
      cells.push_back(CsvWriter::fmt(row.gamma));
      cells.push_back(CsvWriter::fmt(report.gains.h_alpha_phi));
      cells.push_back(report.close ? "1" : "0");
      cells.push_back(lower_ok ? "1" : "0");
      cells.push_back(upper_ok ? "1" : "0");
      csv.row(cells);
    }
    for (const std::string& v : report.violations)
      std::fprintf(stderr, "verify: dist %zu: %s\n", i, v.c_str());
  }
  std::printf("verify: %s\n", any_violation ? "BOUND VIOLATION" : "all bounds hold");
  return any_violation ? 2 : 0;
}

int cmd_optimize(const Args& args) {
  LoadedConfig cfg = load_with_overrides(args);
  OptProblem problem = build_problem(cfg);
  OptResult result = solve(problem);

  CsvWriter csv(out_path(args, "optimize.csv"));
  csv.comment(hash_comment(cfg, args));
  char line[256];
  std::snprintf(line, sizeof(line),
                "objective=%s epsilon=%s alpha_used=%s delta_used=%s "
                "omega_lo=%s omega_hi=%s",
                CsvWriter::fmt(result.objective_value).c_str(),
                CsvWriter::fmt(result.certificate.epsilon).c_str(),
                CsvWriter::fmt(result.certificate.alpha_used).c_str(),
                CsvWriter::fmt(result.certificate.delta_used).c_str(),
                CsvWriter::fmt(result.certificate.omega_lo).c_str(),
                CsvWriter::fmt(result.certificate.omega_hi).c_str());
  csv.comment(line);
  std::snprintf(line, sizeof(line),
                "starts=%d best_start=%d iterations=%lld grad_norm=%s "
                "converged=%d",
                result.diagnostics.starts, result.diagnostics.best_start,
                result.diagnostics.iterations,
                CsvWriter::fmt(result.diagnostics.grad_norm).c_str(),
                result.diagnostics.converged ? 1 : 0);
  csv.comment(line);
  csv.comment(result.certificate.assumption);
  if (precision_of(args) == Precision::Extended) {
    LeakageOptions ext{Precision::Extended, 100000000, args.threads};
    double cross = objective(problem, result.pi_phi, ext);
    csv.comment("objective_extended=" + CsvWriter::fmt(cross));
  }
  csv.header({"phi", "mass"});
  for (Value phi : problem.phi_support) {
    csv.row({std::to_string(phi),
             CsvWriter::fmt(to_double(result.pi_phi.mass(phi)))});
  }

  std::string masses;
  for (Value phi : problem.phi_support) {
    if (!masses.empty()) masses += ", ";
    masses += std::to_string(phi) + ":" +
              CsvWriter::fmt(to_double(result.pi_phi.mass(phi)));
  }
  std::printf(
      "optimize: objective=%s certified omega in [%s, %s] alpha=%s "
      "delta=%s pi_phi={%s}\n",
      CsvWriter::fmt(result.objective_value).c_str(),
      CsvWriter::fmt(result.certificate.omega_lo).c_str(),
      CsvWriter::fmt(result.certificate.omega_hi).c_str(),
      CsvWriter::fmt(result.certificate.alpha_used).c_str(),
      CsvWriter::fmt(result.certificate.delta_used).c_str(), masses.c_str());
  return 0;
}

int cmd_sweep_alpha(const Args& args) {
  LoadedConfig cfg = load_with_overrides(args);
  if (cfg.sweep_alphas.empty())
    throw ConfigError("scenario file declares no sweep.alphas list");
  OptProblem problem = build_problem(cfg);
  std::vector<SweepRow> rows =
      convergence_diagnostics(problem, cfg.sweep_alphas);

  CsvWriter csv(out_path(args, "sweep.csv"));
  csv.comment(hash_comment(cfg, args));
  csv.header({"alpha", "omega_bar", "theta_bound"});
  for (const SweepRow& r : rows) {
    csv.row({CsvWriter::fmt(r.alpha), CsvWriter::fmt(r.omega_bar),
             CsvWriter::fmt(r.theta_bound)});
    std::printf("sweep: alpha=%s omega_bar=%s theta_bound=%s\n",
                CsvWriter::fmt(r.alpha).c_str(),
                CsvWriter::fmt(r.omega_bar).c_str(),
                CsvWriter::fmt(r.theta_bound).c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Quantifies what attacker coalitions learn from multi-party "
      "computation outputs and optimizes virtual-input randomization"};
  app.require_subcommand(1);

  Args args;
  CLI::App* profile = app.add_subcommand(
      "profile", "awae curve of the plain computation");
  CLI::App* randomize = app.add_subcommand(
      "randomize", "compare baseline and randomized awae curves");
  CLI::App* optimize = app.add_subcommand(
      "optimize", "solve for the optimal virtual-input distribution");
  CLI::App* verify = app.add_subcommand(
      "verify", "check the randomization bounds on declared distributions");
  CLI::App* sweep = app.add_subcommand(
      "sweep-alpha", "tabulate rescaled optima against the order-infinity one");
  for (CLI::App* cmd : {profile, randomize, optimize, verify, sweep})
    add_common_flags(cmd, args);

  CLI11_PARSE(app, argc, argv);

  try {
    if (profile->parsed()) return cmd_profile(args);
    if (randomize->parsed()) return cmd_randomize(args);
    if (optimize->parsed()) return cmd_optimize(args);
    if (verify->parsed()) return cmd_verify(args);
    if (sweep->parsed()) return cmd_sweep_alpha(args);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
