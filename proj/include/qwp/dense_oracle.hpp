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

#include <Eigen/Dense>

#include "qwp/coin.hpp"
#include "qwp/errors.hpp"
#include "qwp/state.hpp"

namespace qwp {

inline constexpr int kDenseOracleMaxHalfWidth = 12;

/// Full 2(2T+1)-dimensional matrix of S (C x 1) in the basis ordering
/// index = coin * (2T+1) + (x + T). The shift wraps around the lattice edge so
/// the matrix is a genuine permutation times a block-unitary; the wrap is never
/// exercised by valid states with step < T.
inline Eigen::MatrixXcd dense_step_matrix(int half_width, const CoinMatrix& coin) {
  if (half_width < 1) throw InvalidParameter("half_width must be >= 1");
  if (half_width > kDenseOracleMaxHalfWidth) {
    throw CapacityError("dense oracle limited to half_width <= " +
                        std::to_string(kDenseOracleMaxHalfWidth));
  }
  const Eigen::Index w = 2 * half_width + 1;
  const Eigen::Index n = 2 * w;

  Eigen::MatrixXcd coin_op = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < w; ++i) {
    coin_op(i, i) = coin.m00;
    coin_op(i, w + i) = coin.m01;
    coin_op(w + i, i) = coin.m10;
    coin_op(w + i, w + i) = coin.m11;
  }

  Eigen::MatrixXcd shift = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < w; ++i) {
    shift((i + 1) % w, i) = 1.0;
    shift(w + (i + w - 1) % w, w + i) = 1.0;
  }
  return shift * coin_op;
}

// Reference implementation of one step by explicit dense matrix-vector product.
inline WalkerState dense_step_oracle(const WalkerState& state, const CoinMatrix& coin) {
  if (state.step() >= state.half_width()) {
    throw CapacityError("no room for another step on this lattice");
  }
  const Eigen::MatrixXcd u = dense_step_matrix(state.half_width(), coin);
  const auto amps = state.amplitudes();
  Eigen::VectorXcd psi(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i) psi(static_cast<Eigen::Index>(i)) = amps[i];
  const Eigen::VectorXcd next = u * psi;

  WalkerState out(state.half_width(), state.step() + 1);
  const int w = static_cast<int>(state.width());
  for (int c = 0; c < 2; ++c) {
    for (int i = 0; i < w; ++i) {
      out.amp(c, i - state.half_width()) = next(c * w + i);
    }
  }
  return out;
}

}  // namespace qwp
