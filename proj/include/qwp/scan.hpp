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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qwp/coin.hpp"
#include "qwp/errors.hpp"
#include "qwp/metrics.hpp"
#include "qwp/parallel.hpp"
#include "qwp/walk.hpp"

namespace qwp {

inline constexpr int kMaxScanPeriod = 12;

struct ScanConfig {
  CoinParams coin_a;
  CoinParams coin_b;
  double eta_deg = 0.0;
  int max_period = 6;
  int horizon_steps = 240;  // elementary steps; 240 = 4 * lcm(1..6)
  double epsilon = 1e-9;
  VerdictSampling sampling = VerdictSampling::PeriodBoundary;
  unsigned threads = 1;
  bool keep_trajectories = false;

  void validate() const {
    if (max_period < 2 || max_period > kMaxScanPeriod) {
      throw InvalidParameter("max_period must lie in [2, " + std::to_string(kMaxScanPeriod) +
                             "], got " + std::to_string(max_period));
    }
    if (horizon_steps < max_period) {
      throw InvalidParameter("horizon_steps must be >= max_period");
    }
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
      throw InvalidParameter("epsilon must be finite and non-negative");
    }
  }

  // threads and keep_trajectories do not change the outcome.
  friend bool operator==(const ScanConfig& a, const ScanConfig& b) {
    return a.coin_a == b.coin_a && a.coin_b == b.coin_b && a.eta_deg == b.eta_deg &&
           a.max_period == b.max_period && a.horizon_steps == b.horizon_steps &&
           a.epsilon == b.epsilon && a.sampling == b.sampling;
  }
};

struct SequenceResult {
  GameSequence sequence{std::vector<Game>{Game::A}};
  GameVerdict verdict = GameVerdict::Mixed;
  // Extremes and final value over every elementary step of the horizon.
  double final_bias = 0.0;
  double min_bias = 0.0;
  double max_bias = 0.0;
  double max_entropy = 0.0;

  friend bool operator==(const SequenceResult&, const SequenceResult&) = default;
};

struct PeriodCount {
  int period = 0;
  int sequences = 0;
  int winning = 0;

  friend bool operator==(const PeriodCount&, const PeriodCount&) = default;
};

struct ScanReport {
  ScanConfig config;
  GameVerdict verdict_a = GameVerdict::Mixed;
  GameVerdict verdict_b = GameVerdict::Mixed;
  std::vector<SequenceResult> results;              // enumeration order
  std::vector<GameSequence> paradox_sequences;      // subset of results, same order
  std::vector<PeriodCount> winning_counts_by_period;
  // Only filled when config.keep_trajectories: pure A, pure B, then one per result.
  std::vector<BiasTrajectory> trajectories;

  friend bool operator==(const ScanReport& a, const ScanReport& b) {
    return a.config == b.config && a.verdict_a == b.verdict_a && a.verdict_b == b.verdict_b &&
           a.results == b.results && a.paradox_sequences == b.paradox_sequences &&
           a.winning_counts_by_period == b.winning_counts_by_period;
  }
};

/// Every string over {A, B} of length 2..max_period that uses both letters,
/// shortest first, then lexicographically. Rotations are kept.
inline std::vector<GameSequence> enumerate_sequences(int max_period) {
  if (max_period < 2 || max_period > kMaxScanPeriod) {
    throw InvalidParameter("max_period must lie in [2, " + std::to_string(kMaxScanPeriod) +
                           "], got " + std::to_string(max_period));
  }
  std::vector<GameSequence> out;
  for (int n = 2; n <= max_period; ++n) {
    const unsigned long count = 1ul << n;
    // Bit (n-1-i) of mask selects token i; A=0 so increasing masks are lexicographic.
    for (unsigned long mask = 1; mask + 1 < count; ++mask) {
      std::vector<Game> tokens(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        tokens[static_cast<std::size_t>(i)] = (mask >> (n - 1 - i)) & 1u ? Game::B : Game::A;
      }
      out.emplace_back(std::move(tokens));
    }
  }
  return out;
}

inline SequenceResult summarize(const BiasTrajectory& traj, double epsilon,
                                VerdictSampling sampling) {
  SequenceResult r;
  r.sequence = traj.info.sequence;
  r.verdict = classify(traj, epsilon, sampling);
  r.final_bias = traj.samples.back().bias;
  r.min_bias = traj.samples.front().bias;
  r.max_bias = traj.samples.front().bias;
  r.max_entropy = 0.0;
  for (const BiasSample& s : traj.samples) {
    r.min_bias = std::min(r.min_bias, s.bias);
    r.max_bias = std::max(r.max_bias, s.bias);
    r.max_entropy = std::max(r.max_entropy, s.entropy);
  }
  return r;
}

/// Plays pure A, pure B and every enumerated mixed sequence over the horizon.
/// A sequence is a paradox when it is Winning while A and B are both Losing.
inline ScanReport run_scan(const ScanConfig& config) {
  config.validate();
  const InitialStateSpec init{config.eta_deg, 0};
  const std::vector<GameSequence> sequences = enumerate_sequences(config.max_period);

  std::vector<GameSequence> all;
  all.reserve(sequences.size() + 2);
  all.push_back(GameSequence({Game::A}));
  all.push_back(GameSequence({Game::B}));
  all.insert(all.end(), sequences.begin(), sequences.end());

  std::vector<BiasTrajectory> trajs = parallel_map(
      all.size(),
      [&](std::size_t i) {
        return simulate_trajectory(init, config.coin_a, config.coin_b, all[i],
                                   config.horizon_steps);
      },
      config.threads);

  ScanReport report;
  report.config = config;
  const SequenceResult a = summarize(trajs[0], config.epsilon, config.sampling);
  const SequenceResult b = summarize(trajs[1], config.epsilon, config.sampling);
  report.verdict_a = a.verdict;
  report.verdict_b = b.verdict;
  const bool both_losing =
      report.verdict_a == GameVerdict::Losing && report.verdict_b == GameVerdict::Losing;

  report.results.reserve(sequences.size());
  for (std::size_t i = 2; i < trajs.size(); ++i) {
    SequenceResult r = summarize(trajs[i], config.epsilon, config.sampling);
    if (both_losing && r.verdict == GameVerdict::Winning) {
      report.paradox_sequences.push_back(r.sequence);
    }
    report.results.push_back(std::move(r));
  }

  for (int p = 2; p <= config.max_period; ++p) {
    PeriodCount c{p, 0, 0};
    for (const SequenceResult& r : report.results) {
      if (static_cast<int>(r.sequence.period()) != p) continue;
      ++c.sequences;
      if (r.verdict == GameVerdict::Winning) ++c.winning;
    }
    report.winning_counts_by_period.push_back(c);
  }

  if (config.keep_trajectories) report.trajectories = std::move(trajs);
  return report;
}

// Sequences by descending maximum entropy; ties keep enumeration order.
inline std::vector<std::pair<GameSequence, double>> entropy_comparison(const ScanReport& report) {
  std::vector<std::pair<GameSequence, double>> out;
  out.reserve(report.results.size());
  for (const SequenceResult& r : report.results) {
    if (std::isnan(r.max_entropy)) throw InvalidInput("report carries no entropy data");
    out.emplace_back(r.sequence, r.max_entropy);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& x, const auto& y) { return x.second > y.second; });
  return out;
}

// ---------------------------------------------------------------------------
// Region grids

enum class ScanParameter { AlphaA, BetaA, GammaA, AlphaB, BetaB, GammaB, Eta };

inline constexpr std::array<std::pair<ScanParameter, std::string_view>, 7> kScanParameterNames{{
    {ScanParameter::AlphaA, "alpha_a"},
    {ScanParameter::BetaA, "beta_a"},
    {ScanParameter::GammaA, "gamma_a"},
    {ScanParameter::AlphaB, "alpha_b"},
    {ScanParameter::BetaB, "beta_b"},
    {ScanParameter::GammaB, "gamma_b"},
    {ScanParameter::Eta, "eta"},
}};

inline std::string_view to_string(ScanParameter p) {
  for (const auto& [k, name] : kScanParameterNames) {
    if (k == p) return name;
  }
  return "?";
}

inline ScanParameter parse_scan_parameter(std::string_view s) {
  for (const auto& [k, name] : kScanParameterNames) {
    if (name == s) return k;
  }
  throw InvalidParameter("unknown scan parameter '" + std::string(s) + "'");
}

inline void set_parameter(ScanConfig& c, ScanParameter p, double value) {
  switch (p) {
    case ScanParameter::AlphaA: c.coin_a.alpha_deg = value; break;
    case ScanParameter::BetaA: c.coin_a.beta_deg = value; break;
    case ScanParameter::GammaA: c.coin_a.gamma_deg = value; break;
    case ScanParameter::AlphaB: c.coin_b.alpha_deg = value; break;
    case ScanParameter::BetaB: c.coin_b.beta_deg = value; break;
    case ScanParameter::GammaB: c.coin_b.gamma_deg = value; break;
    case ScanParameter::Eta: c.eta_deg = value; break;
  }
}

// Inclusive range start, start + step, ... <= stop (degrees).
struct AxisSpec {
  ScanParameter parameter = ScanParameter::BetaA;
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  std::vector<double> values() const {
    if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step)) {
      throw InvalidParameter("axis bounds must be finite");
    }
    if (stop < start) throw InvalidParameter("axis stop must be >= start");
    if (!(step > 0.0)) throw InvalidParameter("axis step must be positive");
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = start + static_cast<double>(i) * step;
    return v;
  }

  friend bool operator==(const AxisSpec&, const AxisSpec&) = default;
};

struct RegionCell {
  std::vector<double> coords;  // one value per axis
  bool paradox = false;
  int winning_count = 0;
  GameVerdict verdict_a = GameVerdict::Mixed;
  GameVerdict verdict_b = GameVerdict::Mixed;

  friend bool operator==(const RegionCell&, const RegionCell&) = default;
};

struct RegionGrid {
  std::vector<AxisSpec> axes;
  std::vector<std::size_t> shape;
  std::vector<RegionCell> cells;  // row-major, first axis slowest

  friend bool operator==(const RegionGrid&, const RegionGrid&) = default;
};

inline constexpr std::size_t kDefaultCellBudget = 4096;

/// Runs a full scan per grid cell with the swept parameters substituted into
/// `base`. Cells run on base.threads workers; each cell's scan is serial.
inline RegionGrid scan_region_grid(const ScanConfig& base, const std::vector<AxisSpec>& axes,
                                   std::size_t max_cells = kDefaultCellBudget) {
  if (axes.empty()) throw InvalidParameter("region grid needs at least one axis");
  base.validate();
  RegionGrid grid;
  grid.axes = axes;
  std::vector<std::vector<double>> values;
  std::size_t total = 1;
  for (const AxisSpec& a : axes) {
    values.push_back(a.values());
    grid.shape.push_back(values.back().size());
    total *= values.back().size();
    if (total > max_cells) {
      throw InvalidParameter("region grid exceeds the cell budget of " +
                             std::to_string(max_cells));
    }
  }

  grid.cells = parallel_map(
      total,
      [&](std::size_t flat) {
        RegionCell cell;
        cell.coords.resize(axes.size());
        ScanConfig cfg = base;
        cfg.threads = 1;
        cfg.keep_trajectories = false;
        std::size_t rem = flat;
        for (std::size_t k = axes.size(); k-- > 0;) {
          const std::size_t idx = rem % grid.shape[k];
          rem /= grid.shape[k];
          cell.coords[k] = values[k][idx];
          set_parameter(cfg, axes[k].parameter, values[k][idx]);
        }
        const ScanReport r = run_scan(cfg);
        cell.paradox = !r.paradox_sequences.empty();
        cell.verdict_a = r.verdict_a;
        cell.verdict_b = r.verdict_b;
        cell.winning_count = static_cast<int>(std::count_if(
            r.results.begin(), r.results.end(),
            [](const SequenceResult& s) { return s.verdict == GameVerdict::Winning; }));
        return cell;
      },
      base.threads);
  return grid;
}

}  // namespace qwp
