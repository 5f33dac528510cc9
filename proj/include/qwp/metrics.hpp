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
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qwp/coin.hpp"
#include "qwp/errors.hpp"
#include "qwp/state.hpp"
#include "qwp/walk.hpp"

namespace qwp {

// Observables of the walker after one elementary step.
struct BiasSample {
  int step = 0;
  double p_left = 0.0;    // x <= -1
  double p_origin = 0.0;  // x == 0, counted on neither side
  double p_right = 0.0;   // x >= 1
  double bias = 0.0;      // p_right - p_left
  double entropy = std::numeric_limits<double>::quiet_NaN();  // bits; NaN until computed

  bool has_entropy() const { return !std::isnan(entropy); }
};

struct TrajectoryInfo {
  CoinParams coin_a;
  CoinParams coin_b;
  GameSequence sequence{std::vector<Game>{Game::A}};
  double eta_deg = 0.0;
};

struct BiasTrajectory {
  std::vector<BiasSample> samples;  // steps 1, 2, ..., T
  TrajectoryInfo info;
};

enum class GameVerdict { Winning, Losing, Draw, Mixed };

inline std::string_view to_string(GameVerdict v) {
  switch (v) {
    case GameVerdict::Winning: return "winning";
    case GameVerdict::Losing: return "losing";
    case GameVerdict::Draw: return "draw";
    case GameVerdict::Mixed: return "mixed";
  }
  return "mixed";
}

inline GameVerdict parse_verdict(std::string_view s) {
  if (s == "winning") return GameVerdict::Winning;
  if (s == "losing") return GameVerdict::Losing;
  if (s == "draw") return GameVerdict::Draw;
  if (s == "mixed") return GameVerdict::Mixed;
  throw InvalidInput("unknown verdict '" + std::string(s) + "'");
}

/// Which steps of a trajectory enter the verdict. PeriodBoundary looks at the
/// steps that complete a whole period of the sequence (every step for a pure
/// game); EveryStep looks at all elementary steps.
enum class VerdictSampling { PeriodBoundary, EveryStep };

inline BiasSample bias_sample(const WalkerState& state) {
  BiasSample s;
  s.step = state.step();
  const int t = std::min(state.step(), state.half_width());
  for (int x = -t; x <= t; ++x) {
    const double p = state.site_probability(x);
    if (x < 0) {
      s.p_left += p;
    } else if (x > 0) {
      s.p_right += p;
    } else {
      s.p_origin += p;
    }
  }
  s.bias = s.p_right - s.p_left;
  return s;
}

inline bool sampled_for_verdict(int step, std::size_t period, VerdictSampling sampling) {
  return sampling == VerdictSampling::EveryStep ||
         static_cast<std::size_t>(step) % period == 0;
}

/// Winning iff bias > eps at every sampled step, Losing iff bias < -eps at
/// every sampled step, Draw iff |bias| <= eps throughout, Mixed otherwise.
inline GameVerdict classify(const BiasTrajectory& trajectory, double epsilon = 1e-9,
                            VerdictSampling sampling = VerdictSampling::PeriodBoundary) {
  if (trajectory.samples.empty()) throw InvalidInput("cannot classify an empty trajectory");
  if (!(epsilon >= 0.0)) throw InvalidParameter("epsilon must be non-negative");
  const std::size_t period = trajectory.info.sequence.period();
  bool all_pos = true;
  bool all_neg = true;
  bool all_zero = true;
  bool any = false;
  for (const BiasSample& s : trajectory.samples) {
    if (!sampled_for_verdict(s.step, period, sampling)) continue;
    any = true;
    all_pos = all_pos && s.bias > epsilon;
    all_neg = all_neg && s.bias < -epsilon;
    all_zero = all_zero && std::abs(s.bias) <= epsilon;
  }
  if (!any) throw InvalidInput("trajectory shorter than one period of its sequence");
  if (all_pos) return GameVerdict::Winning;
  if (all_neg) return GameVerdict::Losing;
  if (all_zero) return GameVerdict::Draw;
  return GameVerdict::Mixed;
}

// Reduced density matrix of the coin, Tr_position |psi><psi|.
struct ReducedCoinDensity {
  Complex r00, r01, r10, r11;

  Complex trace() const { return r00 + r11; }

  // Ascending; closed form for a 2x2 Hermitian matrix. The small root comes
  // from det / large root to avoid cancellation.
  std::array<double, 2> eigenvalues() const {
    const double a = r00.real();
    const double d = r11.real();
    const double half_gap = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(r01));
    const double mid = 0.5 * (a + d);
    const double large = mid + half_gap;
    const double det = a * d - std::norm(r01);
    const double small = large > 0.0 ? det / large : mid - half_gap;
    return {small, large};
  }

  double hermiticity_defect() const {
    return std::max({std::abs(r00.imag()), std::abs(r11.imag()), std::abs(r01 - std::conj(r10))});
  }
};

inline ReducedCoinDensity reduced_density(const WalkerState& state) {
  ReducedCoinDensity rho{};
  const auto up = state.row(0);
  const auto down = state.row(1);
  for (std::size_t i = 0; i < up.size(); ++i) {
    rho.r00 += std::norm(up[i]);
    rho.r11 += std::norm(down[i]);
    rho.r01 += up[i] * std::conj(down[i]);
  }
  rho.r10 = std::conj(rho.r01);
  return rho;
}

// Eigenvalues below this are round-off of an exact zero.
inline constexpr double kEigenvalueFloor = 1e-14;

/// Von Neumann entropy in bits, -sum l log2 l with 0 log 0 = 0. Eigenvalues
/// are clamped to [0, 1]; the smaller one is normalised by the trace so the
/// result is the binary entropy H(p), exact at p = 0 and p = 1/2.
inline double entanglement_entropy(const ReducedCoinDensity& rho) {
  const auto [small_raw, large_raw] = rho.eigenvalues();
  const double small = std::clamp(small_raw, 0.0, 1.0);
  const double large = std::clamp(large_raw, 0.0, 1.0);
  if (large <= 0.0) return 0.0;
  const double p = std::min(small / (small + large), 0.5);
  if (p < kEigenvalueFloor) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

inline BiasSample sample_with_entropy(const WalkerState& state) {
  BiasSample s = bias_sample(state);
  s.entropy = entanglement_entropy(reduced_density(state));
  return s;
}

inline BiasTrajectory trajectory_with_entropy(std::span<const WalkerState> snapshots,
                                              TrajectoryInfo info = {}) {
  if (snapshots.empty()) throw InvalidInput("no snapshots");
  BiasTrajectory traj{{}, std::move(info)};
  traj.samples.reserve(snapshots.size());
  for (std::size_t i = 0; i < snapshots.size(); ++i) {
    if (snapshots[i].step() != static_cast<int>(i) + 1) {
      throw InvalidInput("snapshot " + std::to_string(i) + " has step " +
                         std::to_string(snapshots[i].step()) + ", expected " +
                         std::to_string(i + 1));
    }
    traj.samples.push_back(sample_with_entropy(snapshots[i]));
  }
  return traj;
}

/// Evolves and measures in one pass without keeping snapshots.
inline BiasTrajectory simulate_trajectory(const InitialStateSpec& spec, const CoinParams& coin_a,
                                          const CoinParams& coin_b, const GameSequence& seq,
                                          int total_steps) {
  BiasTrajectory traj{{}, TrajectoryInfo{coin_a, coin_b, seq, spec.eta_deg}};
  traj.samples.reserve(static_cast<std::size_t>(std::max(total_steps, 0)));
  evolve_visit(spec, make_coin(coin_a), make_coin(coin_b), seq, total_steps,
               std::max(total_steps, 1),
               [&](const WalkerState& s) { traj.samples.push_back(sample_with_entropy(s)); });
  return traj;
}

}  // namespace qwp
