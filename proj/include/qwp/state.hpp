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
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "qwp/coin.hpp"
#include "qwp/errors.hpp"

namespace qwp {

// Unbiased coin superposition (|0> + e^{i eta}|1>)/sqrt(2) placed at the origin.
struct InitialStateSpec {
  double eta_deg = 0.0;
  int origin = 0;
};

/// Amplitudes of a walker on the sites -half_width..half_width after `step`
/// shift applications. Storage is one contiguous row per coin component with
/// the origin at the centre column.
///
/// A valid state has unit norm, no amplitude outside |x| <= step, and no
/// amplitude at sites whose parity differs from `step`.
class WalkerState {
 public:
  WalkerState(int half_width, int step = 0) : half_width_(half_width), step_(step) {
    if (half_width < 1) throw InvalidParameter("half_width must be >= 1");
    if (step < 0 || step > half_width) throw InvalidParameter("step must lie in [0, half_width]");
    amps_.assign(2 * width(), Complex{});
  }

  int step() const noexcept { return step_; }
  int half_width() const noexcept { return half_width_; }
  std::size_t width() const noexcept { return static_cast<std::size_t>(2 * half_width_ + 1); }

  Complex amp(int coin, int x) const { return amps_[index(coin, x)]; }
  Complex& amp(int coin, int x) { return amps_[index(coin, x)]; }

  // Row for one coin component; element i is site x = i - half_width.
  std::span<const Complex> row(int coin) const {
    return {amps_.data() + static_cast<std::size_t>(coin) * width(), width()};
  }
  std::span<Complex> row(int coin) {
    return {amps_.data() + static_cast<std::size_t>(coin) * width(), width()};
  }

  std::span<const Complex> amplitudes() const { return amps_; }

  // |amp(0,x)|^2 + |amp(1,x)|^2
  double site_probability(int x) const { return std::norm(amp(0, x)) + std::norm(amp(1, x)); }

  double norm() const {
    double sum = 0.0;
    for (const Complex& a : amps_) sum += std::norm(a);
    return std::sqrt(sum);
  }

  // Support and parity check; amplitudes that must vanish have to be exactly zero.
  bool support_ok() const {
    for (int c = 0; c < 2; ++c) {
      for (int x = -half_width_; x <= half_width_; ++x) {
        const bool allowed = std::abs(x) <= step_ && ((x - step_) % 2 == 0);
        if (!allowed && amp(c, x) != Complex{}) return false;
      }
    }
    return true;
  }

  bool is_valid(double norm_tol = 1e-10) const {
    return std::abs(norm() - 1.0) <= norm_tol && support_ok();
  }

  void advance_step() { ++step_; }

  friend bool operator==(const WalkerState&, const WalkerState&) = default;

 private:
  std::size_t index(int coin, int x) const {
    return static_cast<std::size_t>(coin) * width() + static_cast<std::size_t>(x + half_width_);
  }

  int half_width_;
  int step_;
  std::vector<Complex> amps_;
};

inline WalkerState initial_state(const InitialStateSpec& spec, int half_width) {
  if (half_width < 1) throw InvalidParameter("half_width must be >= 1");
  if (!std::isfinite(spec.eta_deg)) throw InvalidParameter("eta must be finite");
  if (spec.origin != 0) throw InvalidParameter("the walker must start at the origin");
  WalkerState state(half_width);
  const double r = 1.0 / std::sqrt(2.0);
  state.amp(0, 0) = Complex{r, 0.0};
  state.amp(1, 0) = cis(r, deg_to_rad(spec.eta_deg));
  return state;
}

}  // namespace qwp
