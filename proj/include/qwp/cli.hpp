// Copyright 2026 The qwparrondo Authors. All Rights Reserved.
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

#pragma once

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qwp/errors.hpp"
#include "qwp/io.hpp"
#include "qwp/metrics.hpp"
#include "qwp/scan.hpp"
#include "qwp/walk.hpp"

namespace qwp::cli {

// Exit statuses of the qwp tool.
enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kIo = 3,
  kCapacity = 4,
  kInvalid = 5,
};

class UsageError : public Error {
 public:
  using Error::Error;
};

enum class Subcommand { Simulate, Scan, Regions };
enum class OutputFormat { Csv, Json };

struct CliConfig {
  Subcommand subcommand = Subcommand::Simulate;
  CoinParams coin_a;
  CoinParams coin_b;
  double eta_deg = 0.0;
  std::string sequence = "A";
  int steps = 240;
  int max_period = 6;
  double epsilon = 1e-9;
  bool every_step = false;
  unsigned threads = 1;
  std::vector<AxisSpec> axes;
  std::size_t max_cells = kDefaultCellBudget;
  std::string out;  // empty: stdout
  OutputFormat format = OutputFormat::Csv;
  std::optional<std::string> help;  // set when --help was requested

  ScanConfig scan_config() const {
    ScanConfig c;
    c.coin_a = coin_a;
    c.coin_b = coin_b;
    c.eta_deg = eta_deg;
    c.max_period = max_period;
    c.horizon_steps = steps;
    c.epsilon = epsilon;
    c.sampling = every_step ? VerdictSampling::EveryStep : VerdictSampling::PeriodBoundary;
    c.threads = threads;
    return c;
  }
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  return parts;
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_number(const std::string& text, const std::string& flag) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (t.empty() || used != t.size() || !std::isfinite(v)) {
    throw UsageError(flag + ": '" + text + "' is not a finite number");
  }
  return v;
}

inline CoinParams parse_coin(const std::string& text, const std::string& flag) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) {
    throw UsageError(flag + ": expected three comma-separated angles in degrees, got '" + text +
                     "'");
  }
  return {parse_number(parts[0], flag), parse_number(parts[1], flag),
          parse_number(parts[2], flag)};
}

// PARAM:START:STOP:STEP
inline AxisSpec parse_axis(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 4) {
    throw UsageError("--axis: expected PARAM:START:STOP:STEP, got '" + text + "'");
  }
  AxisSpec a;
  try {
    a.parameter = parse_scan_parameter(trim(parts[0]));
  } catch (const InvalidParameter& e) {
    throw UsageError(std::string("--axis: ") + e.what());
  }
  a.start = parse_number(parts[1], "--axis");
  a.stop = parse_number(parts[2], "--axis");
  a.step = parse_number(parts[3], "--axis");
  try {
    (void)a.values();
  } catch (const InvalidParameter& e) {
    throw UsageError(std::string("--axis: ") + e.what());
  }
  return a;
}

inline const std::set<std::string>& boolean_flags() {
  static const std::set<std::string> flags{"every-step"};
  return flags;
}

inline bool truthy(const std::string& v) {
  return v == "1" || v == "true" || v == "yes" || v == "on";
}

// Flat key=value file; '#' starts a comment line. Keys are flag names without "--".
inline std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open config file");
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw UsageError("--config: " + path + ":" + std::to_string(lineno) +
                       ": expected key=value");
    }
    entries.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return entries;
}

inline std::string flag_name(const std::string& arg) {
  if (arg.rfind("--", 0) != 0) return {};
  const auto eq = arg.find('=');
  return arg.substr(2, eq == std::string::npos ? std::string::npos : eq - 2);
}

// Inserts config-file entries after the subcommand, skipping keys given as flags.
inline std::vector<std::string> merge_config(const std::vector<std::string>& args) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config: missing PATH");
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    }
  }
  if (!path || args.empty()) return args;

  std::set<std::string> given;
  for (const std::string& a : args) {
    const std::string f = flag_name(a);
    if (!f.empty()) given.insert(f);
  }
  std::vector<std::string> extra;
  for (const auto& [key, value] : read_config_file(*path)) {
    if (key == "config") throw UsageError("--config: nested config files are not supported");
    if (given.count(key)) continue;
    if (boolean_flags().count(key)) {
      if (truthy(value)) extra.push_back("--" + key);
      continue;
    }
    extra.push_back("--" + key);
    extra.push_back(value);
  }
  std::vector<std::string> merged;
  merged.push_back(args.front());
  merged.insert(merged.end(), extra.begin(), extra.end());
  merged.insert(merged.end(), args.begin() + 1, args.end());
  return merged;
}

}  // namespace detail

/// Parses arguments (without the program name) into a validated config.
/// Throws UsageError naming the offending flag.
inline CliConfig parse_cli(const std::vector<std::string>& raw_args) {
  const std::vector<std::string> args = detail::merge_config(raw_args);

  CliConfig cfg;
  CLI::App app{"Quantum-walk Parrondo game simulator", "qwp"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  std::string coin_a_text, coin_b_text, format_text, config_path;
  std::vector<std::string> axis_texts;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--coin-a", coin_a_text, "coin A angles alpha,beta,gamma in degrees")->required();
    sub->add_option("--coin-b", coin_b_text, "coin B angles alpha,beta,gamma in degrees");
    sub->add_option("--eta-deg", cfg.eta_deg, "relative phase of the initial coin state (degrees)");
    sub->add_option("--steps", cfg.steps, "number of elementary steps (horizon)");
    sub->add_option("--epsilon", cfg.epsilon, "draw threshold on the bias");
    sub->add_flag("--every-step", cfg.every_step,
                  "judge verdicts at every elementary step instead of period boundaries");
    sub->add_option("--out", cfg.out, "output path (default stdout)");
    sub->add_option("--format", format_text, "csv or json");
    sub->add_option("--config", config_path, "flat key=value file mirroring the flags");
  };

  CLI::App* simulate = app.add_subcommand("simulate", "evolve one sequence and emit its trajectory");
  common(simulate);
  simulate->add_option("--sequence", cfg.sequence, "period of play over {A,B}, e.g. ABB");

  CLI::App* scan = app.add_subcommand("scan", "classify every sequence up to a maximum period");
  common(scan);
  scan->add_option("--max-period", cfg.max_period, "longest sequence period to enumerate");
  scan->add_option("--threads", cfg.threads, "worker threads");

  CLI::App* regions = app.add_subcommand("regions", "sweep coin parameters and map paradox cells");
  common(regions);
  regions->add_option("--max-period", cfg.max_period, "longest sequence period to enumerate");
  regions->add_option("--axis", axis_texts, "PARAM:START:STOP:STEP, PARAM in alpha_a..gamma_b, eta")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  regions->add_option("--max-cells", cfg.max_cells, "refuse grids larger than this");
  regions->add_option("--threads", cfg.threads, "worker threads");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    cfg.help = app.help();
    for (CLI::App* sub : {simulate, scan, regions}) {
      if (sub->parsed()) cfg.help = sub->help();
    }
    return cfg;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (simulate->parsed()) {
    cfg.subcommand = Subcommand::Simulate;
  } else if (scan->parsed()) {
    cfg.subcommand = Subcommand::Scan;
  } else {
    cfg.subcommand = Subcommand::Regions;
  }

  cfg.coin_a = detail::parse_coin(coin_a_text, "--coin-a");
  cfg.coin_b = coin_b_text.empty() ? cfg.coin_a : detail::parse_coin(coin_b_text, "--coin-b");
  if (!std::isfinite(cfg.eta_deg)) throw UsageError("--eta-deg: must be finite");
  if (cfg.steps < 1) throw UsageError("--steps: must be >= 1");
  if (!(cfg.epsilon >= 0.0) || !std::isfinite(cfg.epsilon)) {
    throw UsageError("--epsilon: must be finite and non-negative");
  }
  if (cfg.threads < 1) throw UsageError("--threads: must be >= 1");

  if (cfg.subcommand == Subcommand::Simulate) {
    if (cfg.sequence.empty() ||
        cfg.sequence.find_first_not_of("AB") != std::string::npos) {
      throw UsageError("--sequence: must match [AB]+, got '" + cfg.sequence + "'");
    }
  } else if (cfg.max_period < 2 || cfg.max_period > kMaxScanPeriod) {
    throw UsageError("--max-period: must lie in [2, " + std::to_string(kMaxScanPeriod) + "]");
  }

  const bool default_format_json = cfg.subcommand != Subcommand::Simulate;
  if (format_text.empty()) {
    cfg.format = default_format_json ? OutputFormat::Json : OutputFormat::Csv;
  } else if (format_text == "csv") {
    cfg.format = OutputFormat::Csv;
  } else if (format_text == "json") {
    cfg.format = OutputFormat::Json;
  } else {
    throw UsageError("--format: expected csv or json, got '" + format_text + "'");
  }

  if (cfg.subcommand == Subcommand::Regions) {
    for (const std::string& t : axis_texts) cfg.axes.push_back(detail::parse_axis(t));
    if (cfg.axes.empty()) {
      cfg.axes = {{ScanParameter::BetaA, 0.0, 90.0, 15.0}, {ScanParameter::BetaB, 0.0, 90.0, 15.0}};
    }
  }
  return cfg;
}

/// Executes one invocation. Data goes to `out` (or --out), diagnostics to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    const CliConfig cfg = parse_cli(args);
    if (cfg.help) {
      out << *cfg.help;
      return kOk;
    }
    switch (cfg.subcommand) {
      case Subcommand::Simulate: {
        const BiasTrajectory traj = simulate_trajectory(
            InitialStateSpec{cfg.eta_deg, 0}, cfg.coin_a, cfg.coin_b,
            GameSequence::parse(cfg.sequence), cfg.steps);
        write_output(cfg.out, out, [&](std::ostream& o) {
          if (cfg.format == OutputFormat::Csv) {
            write_trajectory_csv(traj, o);
          } else {
            o << to_json(traj).dump(2) << '\n';
          }
        });
        if (!cfg.out.empty() && cfg.out != "-") {
          const auto sampling = cfg.every_step ? VerdictSampling::EveryStep
                                               : VerdictSampling::PeriodBoundary;
          out << cfg.sequence << ": " << to_string(classify(traj, cfg.epsilon, sampling)) << '\n';
        }
        return kOk;
      }
      case Subcommand::Scan: {
        const ScanReport report = run_scan(cfg.scan_config());
        write_output(cfg.out, out, [&](std::ostream& o) {
          if (cfg.format == OutputFormat::Json) {
            write_scan_json(report, o);
          } else {
            write_scan_csv(report, o);
          }
        });
        return kOk;
      }
      case Subcommand::Regions: {
        const ScanConfig base = cfg.scan_config();
        const RegionGrid grid = scan_region_grid(base, cfg.axes, cfg.max_cells);
        write_output(cfg.out, out, [&](std::ostream& o) {
          if (cfg.format == OutputFormat::Json) {
            o << to_json(grid, base).dump(2) << '\n';
          } else {
            write_region_csv(grid, o);
          }
        });
        return kOk;
      }
    }
    return kOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << "\n";
    return kCapacity;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }
}

}  // namespace qwp::cli
