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
#include <string>
#include <string_view>
#include <vector>

#include "qwp/coin.hpp"
#include "qwp/errors.hpp"
#include "qwp/state.hpp"

namespace qwp {

enum class Game : char { A = 'A', B = 'B' };

/// One period of play: the coin labels applied on consecutive elementary
/// steps. "ABB" applies C_A first, then C_B twice, then repeats. Rotations
/// are distinct sequences.
class GameSequence {
 public:
  explicit GameSequence(std::vector<Game> tokens) : tokens_(std::move(tokens)) {
    if (tokens_.empty()) throw InvalidParameter("game sequence must be non-empty");
  }

  static GameSequence parse(std::string_view text) {
    if (text.empty()) throw InvalidParameter("game sequence must be non-empty");
    std::vector<Game> tokens;
    tokens.reserve(text.size());
    for (char ch : text) {
      if (ch == 'A') {
        tokens.push_back(Game::A);
      } else if (ch == 'B') {
        tokens.push_back(Game::B);
      } else {
        throw InvalidParameter("game sequence may only contain 'A' and 'B', got '" +
                               std::string(text) + "'");
      }
    }
    return GameSequence(std::move(tokens));
  }

  std::size_t period() const noexcept { return tokens_.size(); }
  const std::vector<Game>& tokens() const noexcept { return tokens_; }

  // Token used on elementary step k (1-based).
  Game at_step(std::size_t k) const { return tokens_[(k - 1) % tokens_.size()]; }

  bool is_pure() const {
    return std::all_of(tokens_.begin(), tokens_.end(),
                       [&](Game g) { return g == tokens_.front(); });
  }

  std::string str() const {
    std::string s;
    for (Game g : tokens_) s.push_back(static_cast<char>(g));
    return s;
  }

  friend bool operator==(const GameSequence&, const GameSequence&) = default;
  friend auto operator<=>(const GameSequence& a, const GameSequence& b) {
    return a.str() <=> b.str();
  }

 private:
  std::vector<Game> tokens_;
};

// (a0, a1) -> M (a0, a1) at every occupied site.
inline WalkerState apply_coin(WalkerState state, const CoinMatrix& coin) {
  const int t = state.step();
  auto up = state.row(0);
  auto down = state.row(1);
  const auto lo = static_cast<std::size_t>(state.half_width() - t);
  const auto hi = static_cast<std::size_t>(state.half_width() + t);
  for (std::size_t i = lo; i <= hi; i += 2) {
    const Complex a0 = up[i];
    const Complex a1 = down[i];
    up[i] = coin.m00 * a0 + coin.m01 * a1;
    down[i] = coin.m10 * a0 + coin.m11 * a1;
  }
  return state;
}

// Coin |0> moves one site right, coin |1> one site left.
inline WalkerState apply_shift(WalkerState state) {
  if (state.step() >= state.half_width()) {
    throw CapacityError("lattice of half-width " + std::to_string(state.half_width()) +
                        " cannot hold step " + std::to_string(state.step() + 1));
  }
  auto up = state.row(0);
  auto down = state.row(1);
  std::shift_right(up.begin(), up.end(), 1);
  up.front() = Complex{};
  std::shift_left(down.begin(), down.end(), 1);
  down.back() = Complex{};
  state.advance_step();
  return state;
}

// U = S (C x 1)
inline WalkerState step(WalkerState state, const CoinMatrix& coin) {
  return apply_shift(apply_coin(std::move(state), coin));
}

/// Runs `total_steps` elementary steps from the initial state, choosing the
/// coin for step k from `seq`, and hands every post-step state to `visit`.
template <typename Visitor>
void evolve_visit(const InitialStateSpec& spec, const CoinMatrix& coin_a,
                  const CoinMatrix& coin_b, const GameSequence& seq, int total_steps,
                  int half_width, Visitor&& visit) {
  if (total_steps < 1) throw InvalidParameter("total_steps must be >= 1");
  if (total_steps > half_width) {
    throw CapacityError("total_steps " + std::to_string(total_steps) +
                        " exceeds lattice half-width " + std::to_string(half_width));
  }
  WalkerState state = initial_state(spec, half_width);
  for (int k = 1; k <= total_steps; ++k) {
    const CoinMatrix& coin = seq.at_step(static_cast<std::size_t>(k)) == Game::A ? coin_a : coin_b;
    state = step(std::move(state), coin);
    visit(static_cast<const WalkerState&>(state));
  }
}

// Snapshot k (0-based) holds the state after elementary step k+1.
inline std::vector<WalkerState> evolve_sequence(const InitialStateSpec& spec,
                                                const CoinParams& coin_a,
                                                const CoinParams& coin_b,
                                                const GameSequence& seq, int total_steps,
                                                int half_width = 0) {
  if (half_width == 0) half_width = std::max(total_steps, 1);
  std::vector<WalkerState> snapshots;
  snapshots.reserve(static_cast<std::size_t>(std::max(total_steps, 0)));
  evolve_visit(spec, make_coin(coin_a), make_coin(coin_b), seq, total_steps, half_width,
               [&](const WalkerState& s) { snapshots.push_back(s); });
  return snapshots;
}

}  // namespace qwp
