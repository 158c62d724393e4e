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

#include "metagame/shapley.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "metagame/errors.h"
#include "metagame/model.h"
#include "metagame/model_zoo.h"
#include "oracles.h"

namespace metagame {
namespace {

TEST(ShapleyTest, Table1Values) {
  const MaskedGame game(MaskedModel(Table1Model(), {2.0, 3.0}, {0.0, 0.0}));
  const auto phi = ShapleyValueExact(game);
  EXPECT_EQ(phi.values, (std::vector<double>{11.0, 9.0}));
  EXPECT_EQ(phi.method, MethodTag::kShapley);
}

TEST(ShapleyTest, ConstantGameIsZero) {
  const FunctionGame game(6, [](const Coalition&) { return 4.0; });
  for (double v : ShapleyValueExact(game).values) EXPECT_EQ(v, 0.0);
}

TEST(ShapleyTest, SinglePlayer) {
  const TableGame game(1, {1.0, 3.5});
  EXPECT_EQ(ShapleyValueExact(game).values, (std::vector<double>{2.5}));
}

TEST(ShapleyTest, MatchesPermutationBruteForce) {
  for (unsigned seed = 0; seed < 6; ++seed) {
    for (int d : {2, 5, 8}) {
      const auto table = oracle::RandomTable(d, 1000 * d + seed);
      const TableGame game(d, table);
      EXPECT_LT(oracle::MaxAbsDiff(ShapleyValueExact(game).values,
                                   oracle::PermutationShapley(table, d)),
                1e-9);
    }
  }
}

TEST(ShapleyTest, WeightsSumToOneAcrossSizes) {
  for (int n : {1, 2, 7, 30, 63}) {
    const auto w = ShapleySizeWeights(n);
    ASSERT_EQ(static_cast<int>(w.size()), n);
    double total = 0.0;
    for (int s = 0; s < n; ++s) total += w[s] * oracle::Binomial(n - 1, s);
    EXPECT_NEAR(total, 1.0, 1e-12) << n;
    EXPECT_DOUBLE_EQ(w[0], 1.0 / n);
  }
}

TEST(ShapleyTest, EfficiencyOnRandomGames) {
  for (int d = 1; d <= 12; ++d) {
    const auto table = oracle::RandomTable(d, d);
    const auto phi = ShapleyValueExact(TableGame(d, table)).values;
    const double sum = std::accumulate(phi.begin(), phi.end(), 0.0);
    EXPECT_NEAR(sum, table.back() - table.front(), 1e-8);
  }
}

TEST(ShapleyTest, DummyAndSymmetry) {
  MobiusExpansion m(5);
  m.Set(Coalition::Of({0, 1}, 5), 2.0);
  m.Set(Coalition::Of({0, 1, 3}, 5), -1.0);
  m.Set(Coalition::Of({3}, 5), 0.5);
  const MobiusGame game(m);
  const auto phi = ShapleyValueExact(game).values;
  EXPECT_NEAR(phi[2], 0.0, 1e-9);
  EXPECT_NEAR(phi[4], 0.0, 1e-9);
  EXPECT_EQ(phi[0], phi[1]);
}

TEST(ShapleyTest, SwappingPlayersSwapsValues) {
  const int d = 6;
  const auto table = oracle::RandomTable(d, 77);
  std::vector<double> swapped(table.size());
  for (std::uint64_t s = 0; s < table.size(); ++s) {
    const std::uint64_t b1 = s >> 1 & 1, b4 = s >> 4 & 1;
    const std::uint64_t t = (s & ~std::uint64_t{0b10010}) | (b1 << 4) | (b4 << 1);
    swapped[t] = table[s];
  }
  const auto a = ShapleyValueExact(TableGame(d, table)).values;
  const auto b = ShapleyValueExact(TableGame(d, swapped)).values;
  EXPECT_NEAR(a[1], b[4], 1e-14);
  EXPECT_NEAR(a[4], b[1], 1e-14);
  EXPECT_NEAR(a[0], b[0], 1e-14);
}

TEST(ShapleyTest, MobiusForm) {
  const auto game = RandomMobiusGame(9, 0.3, 12);
  EXPECT_LT(oracle::MaxAbsDiff(ShapleyFromMobius(game->expansion()),
                               ShapleyValueExact(*game).values),
            1e-9);
}

TEST(ShapleyTest, SubgameMatchesBruteForce) {
  const int d = 6;
  const auto table = oracle::RandomTable(d, 31);
  for (std::uint64_t active : {0b000001u, 0b101101u, 0b111111u, 0b010110u}) {
    for (int i = 0; i < d; ++i) {
      if (!(active >> i & 1)) continue;
      EXPECT_NEAR(ShapleyOnSubgame(table, active, i),
                  oracle::SubgameShapley(table, active, i), 1e-12);
    }
  }
}

TEST(ShapleyTest, FaultInjectionBreaksEfficiency) {
  const auto table = oracle::RandomTable(5, 3);
  const TableGame game(5, table);
  double sum = 0.0;
  {
    testing::ScopedShapleyWeightFault fault;
    for (double v : ShapleyValueExact(game).values) sum += v;
  }
  EXPECT_GT(std::abs(sum - (table.back() - table.front())), 1e-6);
  sum = 0.0;
  for (double v : ShapleyValueExact(game).values) sum += v;
  EXPECT_NEAR(sum, table.back() - table.front(), 1e-12);
}

TEST(ShapleyTest, ThreadCountDoesNotChangeBits) {
  const auto table = oracle::RandomTable(11, 8);
  const TableGame game(11, table);
  EngineOptions one, four;
  four.threads = 4;
  EXPECT_EQ(ShapleyValueExact(game, one).values, ShapleyValueExact(game, four).values);
}

}  // namespace
}  // namespace metagame
