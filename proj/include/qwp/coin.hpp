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
#include <cmath>
#include <complex>
#include <numbers>
#include "qwp/errors.hpp"

namespace qwp {

using Complex = std::complex<double>;

inline constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

// r * e^{i theta}; unlike std::polar, r may be negative.
inline Complex cis(double r, double theta) { return {r * std::cos(theta), r * std::sin(theta)}; }

// Euler-angle triple of an SU(2) coin, in degrees.
struct CoinParams {
  double alpha_deg = 0.0;
  double beta_deg = 0.0;
  double gamma_deg = 0.0;

  friend bool operator==(const CoinParams&, const CoinParams&) = default;
};

// 2x2 complex matrix acting on the coin basis {|0>, |1>}.
struct CoinMatrix {
  Complex m00{1.0, 0.0};
  Complex m01{0.0, 0.0};
  Complex m10{0.0, 0.0};
  Complex m11{1.0, 0.0};

  static CoinMatrix identity() { return {}; }

  Complex determinant() const { return m00 * m11 - m01 * m10; }

  CoinMatrix adjoint() const {
    return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)};
  }

  friend CoinMatrix operator*(const CoinMatrix& a, const CoinMatrix& b) {
    return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
  }

  // Largest entrywise deviation of M * M^dagger from the identity.
  double unitarity_defect() const {
    const CoinMatrix p = *this * adjoint();
    return std::max({std::abs(p.m00 - 1.0), std::abs(p.m01), std::abs(p.m10),
                     std::abs(p.m11 - 1.0)});
  }
};

/// Builds the coin
///
///     [ e^{i a} cos b   -e^{-i g} sin b ]
///     [ e^{i g} sin b    e^{-i a} cos b ]
///
/// from angles given in degrees. Every finite triple is legal.
inline CoinMatrix make_coin(const CoinParams& p) {
  if (!std::isfinite(p.alpha_deg) || !std::isfinite(p.beta_deg) ||
      !std::isfinite(p.gamma_deg)) {
    throw InvalidParameter("coin angles must be finite");
  }
  const double a = deg_to_rad(p.alpha_deg);
  const double b = deg_to_rad(p.beta_deg);
  const double g = deg_to_rad(p.gamma_deg);
  const double c = std::cos(b);
  const double s = std::sin(b);
  return {cis(c, a), cis(-s, -g), cis(s, g), cis(c, -a)};
}

}  // namespace qwp
