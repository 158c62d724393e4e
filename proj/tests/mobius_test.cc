/*
 * Copyright 2026 The Metagame Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "metagame/mobius.h"

#include <gtest/gtest.h>

#include "metagame/errors.h"
#include "metagame/model.h"
#include "metagame/model_zoo.h"
#include "oracles.h"

namespace metagame {
namespace {

TEST(MobiusTest, Table1Coefficients) {
  for (const auto& x : {std::vector<double>{2, 3}, std::vector<double>{-1.5, 0.5}}) {
    const MaskedGame game(MaskedModel(Table1Model(), x, {0.0, 0.0}));
    const MobiusExpansion m = MobiusTransform(game);
    EXPECT_DOUBLE_EQ(m.coefficient(Coalition::Of({0}, 2)), x[0]);
    EXPECT_DOUBLE_EQ(m.coefficient(Coalition::Of({1}, 2)), 0.0);
    EXPECT_DOUBLE_EQ(m.coefficient(Coalition::Full(2)), x[0] * x[1] * x[1]);
    EXPECT_EQ(m.coefficients().count(0b10), 0u);  // dropped as zero
  }
}

TEST(MobiusTest, ConstantGame) {
  const FunctionGame game(5, [](const Coalition&) { return 3.25; });
  const MobiusExpansion m = MobiusTransform(game);
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m.coefficient(Coalition::Empty(5)), 3.25);
}

TEST(MobiusTest, MatchesDefinition) {
  const auto table = oracle::RandomTable(7, 11);
  const auto expected = oracle::Mobius(table);
  EXPECT_LT(oracle::MaxAbsDiff(MobiusTransformTable(table), expected), 1e-12);
}

TEST(MobiusTest, RoundTripEightPlayers) {
  const auto game = RandomMobiusGame(8, 0.4, 5);
  const auto table = EnumerateGame(*game);
  const MobiusExpansion m = MobiusTransform(*game);
  for (std::uint64_t s = 0; s < 256; ++s) {
    // Reconstruction by explicit subset sum over stored coefficients.
    double sum = 0.0;
    for (const auto& [t, value] : m.coefficients()) {
      if ((t & ~s) == 0) sum += value;
    }
    EXPECT_NEAR(sum, table[s], 1e-10);
    EXPECT_NEAR(MobiusEvaluate(m, Coalition(s, 8)), table[s], 1e-10);
  }
}

TEST(MobiusTest, RoundTripRandomGames) {
  for (int d = 1; d <= 10; ++d) {
    const auto table = oracle::RandomTable(d, 40 + d);
    const MobiusExpansion m = MobiusFromTable(d, table);
    EXPECT_LT(oracle::MaxAbsDiff(MobiusToTable(m), table), 1e-9) << d;
  }
}

TEST(MobiusTest, EvaluateExamples) {
  MobiusExpansion m(2);
  m.Set(Coalition::Of({0}, 2), 2.0);
  m.Set(Coalition::Full(2), 18.0);
  EXPECT_EQ(MobiusEvaluate(m, Coalition::Of({0}, 2)), 2.0);
  EXPECT_EQ(MobiusEvaluate(m, Coalition::Full(2)), 20.0);
  EXPECT_EQ(MobiusEvaluate(m, Coalition::Of({1}, 2)), 0.0);
  EXPECT_THROW(MobiusEvaluate(m, Coalition::Full(3)), std::invalid_argument);
}

TEST(MobiusTest, ThresholdDropsNoise) {
  std::vector<double> table = {0.0, 1.0, 1e-13, 1.0 + 1e-13};
  EXPECT_EQ(MobiusFromTable(2, table).size(), 1u);
  EngineOptions keep;
  keep.sparsity_threshold = 0.0;
  EXPECT_EQ(MobiusFromTable(2, table, keep).coefficient(Coalition::Of({1}, 2)), 1e-13);
}

TEST(MobiusTest, DummyPlayerHasZeroMarginals) {
  MobiusExpansion m(5);
  m.Set(Coalition::Of({0, 1}, 5), 1.5);
  m.Set(Coalition::Of({1, 3, 4}, 5), -0.5);
  m.Set(Coalition::Of({4}, 5), 2.0);
  EXPECT_EQ(m.support_mask(), 0b11011u);
  const MobiusGame game(m);
  const auto table = EnumerateGame(game);
  for (std::uint64_t s = 0; s < 32; ++s) {
    if (s & 0b100) continue;
    EXPECT_NEAR(table[s | 0b100] - table[s], 0.0, 1e-9);
  }
}

TEST(MobiusTest, CapacityLimit) {
  const FunctionGame big(30, [](const Coalition&) { return 0.0; });
  EXPECT_THROW(MobiusTransform(big), CapacityError);
}

}  // namespace
}  // namespace metagame
