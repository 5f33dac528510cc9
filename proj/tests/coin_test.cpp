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

#include "qwp/coin.hpp"

#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace qwp {
namespace {

TEST(MakeCoin, ZeroAnglesGiveIdentity) {
  const CoinMatrix m = make_coin({0, 0, 0});
  EXPECT_EQ(m.m00, Complex(1, 0));
  EXPECT_EQ(m.m11, Complex(1, 0));
  EXPECT_NEAR(std::abs(m.m01), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m.m10), 0.0, 1e-15);
}

TEST(MakeCoin, EntryMatchesScalarTrig) {
  // e^{i 156deg} cos 16deg, evaluated independently.
  const CoinMatrix m = make_coin({156, 16, 0});
  EXPECT_NEAR(m.m00.real(), -0.878156255930274, 1e-14);
  EXPECT_NEAR(m.m00.imag(), 0.3909803553233026, 1e-14);
  EXPECT_NEAR(std::abs(m.m01 + Complex(std::sin(deg_to_rad(16)), 0)), 0.0, 1e-15);
}

TEST(MakeCoin, DeterminantIsOne) {
  const Complex det = make_coin({175, 65, 165}).determinant();
  EXPECT_NEAR(det.real(), 1.0, 1e-12);
  EXPECT_NEAR(det.imag(), 0.0, 1e-12);
}

TEST(MakeCoin, DegenerateBetaIsLegal) {
  const CoinMatrix diag = make_coin({30, 0, 45});
  EXPECT_NEAR(std::abs(diag.m01), 0.0, 1e-15);
  EXPECT_LT(diag.unitarity_defect(), 1e-12);
  const CoinMatrix anti = make_coin({30, 90, 45});
  EXPECT_NEAR(std::abs(anti.m00), 0.0, 1e-15);
  EXPECT_LT(anti.unitarity_defect(), 1e-12);
}

TEST(MakeCoin, RejectsNonFinite) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_THROW(make_coin({nan, 0, 0}), InvalidParameter);
  EXPECT_THROW(make_coin({0, inf, 0}), InvalidParameter);
  EXPECT_THROW(make_coin({0, 0, -inf}), InvalidParameter);
}

TEST(MakeCoinProperty, UnitaryWithUnitDeterminantForRandomAngles) {
  std::mt19937_64 rng(20261015);
  for (int i = 0; i < 1000; ++i) {
    const CoinParams p = testing::random_coin_params(rng);
    const CoinMatrix m = make_coin(p);
    ASSERT_LT(m.unitarity_defect(), 1e-12) << p.alpha_deg << "," << p.beta_deg << "," << p.gamma_deg;
    ASSERT_NEAR(std::abs(m.determinant() - 1.0), 0.0, 1e-12);
  }
}

}  // namespace
}  // namespace qwp
