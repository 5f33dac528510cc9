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

#include "qwp/scan.hpp"

#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "qwp/io.hpp"
#include "test_util.hpp"

namespace qwp {
namespace {

std::vector<std::string> names(const std::vector<GameSequence>& seqs) {
  std::vector<std::string> out;
  for (const auto& s : seqs) out.push_back(s.str());
  return out;
}

bool contains(const std::vector<GameSequence>& seqs, const char* s) {
  return std::find(seqs.begin(), seqs.end(), GameSequence::parse(s)) != seqs.end();
}

ScanConfig regime3_config(int max_period) {
  ScanConfig c;
  c.coin_a = testing::kRegime3CoinA;
  c.coin_b = testing::kRegime3CoinB;
  c.eta_deg = 90;
  c.max_period = max_period;
  return c;
}

TEST(EnumerateSequences, PeriodTwo) {
  EXPECT_EQ(names(enumerate_sequences(2)), (std::vector<std::string>{"AB", "BA"}));
}

TEST(EnumerateSequences, PeriodThree) {
  EXPECT_EQ(names(enumerate_sequences(3)),
            (std::vector<std::string>{"AB", "BA", "AAB", "ABA", "ABB", "BAA", "BAB", "BBA"}));
}

TEST(EnumerateSequences, KeepsRotations) {
  const auto seqs = enumerate_sequences(3);
  EXPECT_TRUE(contains(seqs, "ABB"));
  EXPECT_TRUE(contains(seqs, "BBA"));
}

TEST(EnumerateSequences, CountsMatchClosedForm) {
  for (int max_period = 2; max_period <= kMaxScanPeriod; ++max_period) {
    const auto seqs = enumerate_sequences(max_period);
    std::vector<std::size_t> per_length(static_cast<std::size_t>(max_period + 1), 0);
    std::set<std::string> unique;
    for (const auto& s : seqs) {
      ++per_length[s.period()];
      unique.insert(s.str());
      ASSERT_FALSE(s.is_pure());
    }
    EXPECT_EQ(unique.size(), seqs.size());
    std::size_t total = 0;
    for (int n = 2; n <= max_period; ++n) {
      EXPECT_EQ(per_length[static_cast<std::size_t>(n)], (std::size_t{1} << n) - 2) << n;
      total += (std::size_t{1} << n) - 2;
    }
    EXPECT_EQ(seqs.size(), total);
  }
}

TEST(EnumerateSequences, RejectsOutOfRange) {
  EXPECT_THROW(enumerate_sequences(1), InvalidParameter);
  EXPECT_THROW(enumerate_sequences(13), InvalidParameter);
}

TEST(RunScan, Regime3ParametersFindAbb) {
  const ScanReport r = run_scan(regime3_config(3));
  EXPECT_EQ(r.verdict_a, GameVerdict::Losing);
  EXPECT_EQ(r.verdict_b, GameVerdict::Losing);
  EXPECT_EQ(r.results.size(), 8u);
  EXPECT_TRUE(contains(r.paradox_sequences, "ABB"));
}

TEST(RunScan, IdenticalCoinsHaveNoParadox) {
  ScanConfig c;
  c.coin_a = c.coin_b = testing::kRegime1CoinA;
  c.eta_deg = 270;
  c.max_period = 4;
  const ScanReport r = run_scan(c);
  EXPECT_EQ(r.verdict_a, GameVerdict::Losing);
  EXPECT_EQ(r.verdict_b, GameVerdict::Losing);
  EXPECT_TRUE(r.paradox_sequences.empty());
  for (const auto& s : r.results) EXPECT_EQ(s.verdict, GameVerdict::Losing) << s.sequence.str();
}

TEST(RunScan, Regime1ParametersFindAbb) {
  ScanConfig c;
  c.coin_a = testing::kRegime1CoinA;
  c.coin_b = testing::kRegime1CoinB;
  c.eta_deg = 270;
  c.max_period = 5;
  const ScanReport r = run_scan(c);
  EXPECT_TRUE(contains(r.paradox_sequences, "ABB"));
}

TEST(RunScan, RejectsBadConfig) {
  ScanConfig c = regime3_config(1);
  EXPECT_THROW(run_scan(c), InvalidParameter);
  c = regime3_config(6);
  c.horizon_steps = 5;
  EXPECT_THROW(run_scan(c), InvalidParameter);
  c = regime3_config(3);
  c.epsilon = -1;
  EXPECT_THROW(run_scan(c), InvalidParameter);
}

TEST(RunScan, ResultsRespectBiasOrdering) {
  const ScanReport r = run_scan(regime3_config(4));
  for (const auto& s : r.results) {
    EXPECT_LE(s.min_bias, s.final_bias);
    EXPECT_LE(s.final_bias, s.max_bias);
    EXPECT_GE(s.max_entropy, 0.0);
    EXPECT_LE(s.max_entropy, 1.0 + 1e-10);
  }
}

TEST(RunScanProperty, ParadoxSequencesAreSoundAgainstStoredTrajectories) {
  for (auto sampling : {VerdictSampling::PeriodBoundary, VerdictSampling::EveryStep}) {
    ScanConfig c = regime3_config(5);
    c.sampling = sampling;
    c.keep_trajectories = true;
    const ScanReport r = run_scan(c);
    ASSERT_EQ(r.trajectories.size(), r.results.size() + 2);
    auto sampled = [&](const BiasTrajectory& t, const BiasSample& s) {
      return sampled_for_verdict(s.step, t.info.sequence.period(), sampling);
    };
    if (!r.paradox_sequences.empty()) {
      for (std::size_t pure = 0; pure < 2; ++pure) {
        for (const auto& s : r.trajectories[pure].samples) {
          if (sampled(r.trajectories[pure], s)) {
            ASSERT_LT(s.bias, -c.epsilon);
          }
        }
      }
    }
    for (std::size_t i = 0; i < r.results.size(); ++i) {
      if (!contains(r.paradox_sequences, r.results[i].sequence.str().c_str())) continue;
      const BiasTrajectory& t = r.trajectories[i + 2];
      ASSERT_EQ(t.info.sequence, r.results[i].sequence);
      for (const auto& s : t.samples) {
        if (sampled(t, s)) {
          ASSERT_GT(s.bias, c.epsilon);
        }
      }
    }
  }
}

TEST(RunScanProperty, EveryStepSamplingCannotWinWhenPureGamesLose) {
  // Step 1 of any sequence is step 1 of the pure game of its first token.
  ScanConfig c = regime3_config(4);
  c.sampling = VerdictSampling::EveryStep;
  const ScanReport r = run_scan(c);
  ASSERT_EQ(r.verdict_a, GameVerdict::Losing);
  ASSERT_EQ(r.verdict_b, GameVerdict::Losing);
  EXPECT_TRUE(r.paradox_sequences.empty());
}

TEST(RunScanProperty, DeterministicAndThreadIndependent) {
  ScanConfig serial = regime3_config(4);
  ScanConfig threaded = serial;
  threaded.threads = 4;
  std::ostringstream a, b, c;
  write_scan_json(run_scan(serial), a);
  write_scan_json(run_scan(serial), b);
  write_scan_json(run_scan(threaded), c);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str(), c.str());
}

TEST(RunScan, WinningCountsByPeriod) {
  const ScanReport r = run_scan(regime3_config(4));
  ASSERT_EQ(r.winning_counts_by_period.size(), 3u);
  int winning = 0;
  for (const auto& p : r.winning_counts_by_period) {
    EXPECT_EQ(p.sequences, (1 << p.period) - 2);
    winning += p.winning;
  }
  EXPECT_EQ(winning, static_cast<int>(std::count_if(r.results.begin(), r.results.end(), [](auto& s) {
              return s.verdict == GameVerdict::Winning;
            })));
}

TEST(EntropyComparison, SortedDescendingAndBounded) {
  const ScanReport r = run_scan(regime3_config(4));
  const auto ranked = entropy_comparison(r);
  ASSERT_EQ(ranked.size(), r.results.size());
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    EXPECT_GE(ranked[i].second, 0.0);
    EXPECT_LE(ranked[i].second, 1.0 + 1e-10);
    if (i > 0) {
      EXPECT_GE(ranked[i - 1].second, ranked[i].second);
    }
  }
}

TEST(EntropyComparison, Singleton) {
  ScanReport r;
  SequenceResult s;
  s.sequence = GameSequence::parse("AB");
  s.max_entropy = 0.7;
  r.results.push_back(s);
  const auto ranked = entropy_comparison(r);
  ASSERT_EQ(ranked.size(), 1u);
  EXPECT_EQ(ranked[0].first.str(), "AB");
  EXPECT_EQ(ranked[0].second, 0.7);
}

TEST(AxisSpec, InclusiveValues) {
  EXPECT_EQ((AxisSpec{ScanParameter::BetaA, 0, 90, 30}.values()),
            (std::vector<double>{0, 30, 60, 90}));
  EXPECT_EQ((AxisSpec{ScanParameter::Eta, 5, 5, 1}.values()), (std::vector<double>{5}));
  EXPECT_THROW((AxisSpec{ScanParameter::Eta, 5, 4, 1}.values()), InvalidParameter);
  EXPECT_THROW((AxisSpec{ScanParameter::Eta, 0, 4, 0}.values()), InvalidParameter);
}

TEST(ScanRegionGrid, SingleCellAtRegime3Parameters) {
  const RegionGrid g = scan_region_grid(
      regime3_config(3), {{ScanParameter::BetaA, 16, 16, 1}, {ScanParameter::BetaB, 75, 75, 1}});
  ASSERT_EQ(g.cells.size(), 1u);
  EXPECT_TRUE(g.cells[0].paradox);
  EXPECT_GE(g.cells[0].winning_count, 1);
}

TEST(ScanRegionGrid, EqualCoinsNeverParadox) {
  ScanConfig base = regime3_config(3);
  base.coin_b = base.coin_a;
  const RegionGrid g = scan_region_grid(base, {{ScanParameter::Eta, 0, 330, 30}});
  ASSERT_EQ(g.cells.size(), 12u);
  for (const auto& c : g.cells) EXPECT_FALSE(c.paradox) << c.coords[0];
}

TEST(ScanRegionGrid, FiveByFiveAroundRegime3) {
  const std::vector<AxisSpec> axes{{ScanParameter::BetaA, 12, 20, 2},
                                   {ScanParameter::BetaB, 71, 79, 2}};
  ScanConfig serial = regime3_config(3);
  ScanConfig threaded = serial;
  threaded.threads = 3;
  const RegionGrid g = scan_region_grid(serial, axes);
  ASSERT_EQ(g.shape, (std::vector<std::size_t>{5, 5}));
  ASSERT_EQ(g.cells.size(), 25u);
  // Row-major: beta_a slowest.
  EXPECT_EQ(g.cells[1].coords, (std::vector<double>{12, 73}));
  EXPECT_EQ(g.cells[5].coords, (std::vector<double>{14, 71}));
  const RegionCell& centre = g.cells[2 * 5 + 2];
  EXPECT_EQ(centre.coords, (std::vector<double>{16, 75}));
  EXPECT_TRUE(centre.paradox);
  EXPECT_EQ(scan_region_grid(threaded, axes), g);
}

TEST(ScanRegionGrid, BudgetAndAxisErrors) {
  EXPECT_THROW(scan_region_grid(regime3_config(3), {{ScanParameter::BetaA, 0, 90, 1},
                                                 {ScanParameter::BetaB, 0, 90, 1}},
                                100),
               InvalidParameter);
  EXPECT_THROW(scan_region_grid(regime3_config(3), {}), InvalidParameter);
  EXPECT_THROW(parse_scan_parameter("delta_a"), InvalidParameter);
  EXPECT_EQ(parse_scan_parameter("gamma_b"), ScanParameter::GammaB);
}

}  // namespace
}  // namespace qwp
