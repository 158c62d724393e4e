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

#include "metagame/approx.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "metagame/errors.h"
#include "metagame/model_zoo.h"
#include "metagame/shapley.h"
#include "oracles.h"

namespace metagame {
namespace {

MaskedGame Table1Game() {
  return MaskedGame(MaskedModel(Table1Model(), {2.0, 3.0}, {0.0, 0.0}));
}

double Mse(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return s / a.size();
}

TEST(McPermutationTest, AdditiveExactAfterOnePermutation) {
  const auto game = AdditiveGame({1.5, -2.0, 0.25, 4.0});
  const auto est = ShapleyMcPermutation(*game, {5, 3, false});
  EXPECT_EQ(est.evaluations_used, 5u);
  const std::vector<double> c = {1.5, -2.0, 0.25, 4.0};
  EXPECT_LT(oracle::MaxAbsDiff(est.values, c), 1e-12);
  for (double s : est.stderrs) EXPECT_EQ(s, 0.0);
}

TEST(McPermutationTest, Table1WithinThreeStandardErrors) {
  const auto game = Table1Game();
  const auto est = ShapleyMcPermutation(game, {10000 * 3, 17, false});
  const double exact[2] = {11.0, 9.0};
  for (int i = 0; i < 2; ++i) {
    EXPECT_LT(est.stderrs[i], 0.3);
    EXPECT_LE(std::abs(est.values[i] - exact[i]), 3 * est.stderrs[i] + 1e-12);
  }
}

TEST(McPermutationTest, SeededDeterminism) {
  const auto game = RandomMobiusGame(6, 0.5, 4);
  const auto a = ShapleyMcPermutation(*game, {7, 99, false});
  const auto b = ShapleyMcPermutation(*game, {7, 99, false});
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.stderrs, b.stderrs);
  const auto c = ShapleyMcPermutation(*game, {700, 100, false});
  const auto d = ShapleyMcPermutation(*game, {700, 101, false});
  EXPECT_NE(c.values, d.values);
}

TEST(McPermutationTest, RejectsBudgetBelowOnePermutation) {
  const auto game = RandomMobiusGame(5, 0.5, 4);
  EXPECT_THROW(ShapleyMcPermutation(*game, {5, 0, false}), std::invalid_argument);
}

TEST(McPermutationTest, UnbiasedOverSeeds) {
  const auto game = RandomMobiusGame(8, 0.3, 8);
  const auto exact = ShapleyValueExact(*game).values;
  const int seeds = 200;
  std::vector<double> sum(8, 0.0), sum_sq(8, 0.0);
  for (int s = 0; s < seeds; ++s) {
    const auto est = ShapleyMcPermutation(*game, {9 * 4, static_cast<std::uint64_t>(s), false});
    for (int i = 0; i < 8; ++i) {
      sum[i] += est.values[i];
      sum_sq[i] += est.values[i] * est.values[i];
    }
  }
  for (int i = 0; i < 8; ++i) {
    const double mean = sum[i] / seeds;
    const double var = (sum_sq[i] - seeds * mean * mean) / (seeds - 1);
    const double sem = std::sqrt(std::max(var, 0.0) / seeds);
    EXPECT_LT(std::abs(mean - exact[i]), 4 * sem + 1e-12) << i;
  }
}

TEST(RegressionTest, ExhaustiveBudgetIsExact) {
  const auto table = oracle::RandomTable(8, 44);
  const TableGame game(8, table);
  const auto est = ShapleyRegression(game, {256, 1, false});
  EXPECT_LT(oracle::MaxAbsDiff(est.values, ShapleyValueExact(game).values), 1e-8);
  EXPECT_LE(est.evaluations_used, 256u);
}

TEST(RegressionTest, AdditiveExactAtSmallBudget) {
  const std::vector<double> c = {0.5, 1.0, -1.0, 2.0, 3.0, -0.5, 0.1, 0.7, 1.1, -2.2};
  const auto game = AdditiveGame(c);
  for (bool pairing : {false, true}) {
    const auto est = ShapleyRegression(*game, {40, 5, pairing});
    EXPECT_LT(oracle::MaxAbsDiff(est.values, c), 1e-9);
  }
}

TEST(RegressionTest, Table1Coverage) {
  const auto game = Table1Game();
  int within = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto est = ShapleyRegression(game, {64, seed, true});
    if (std::abs(est.values[0] - 11.0) < 0.5 && std::abs(est.values[1] - 9.0) < 0.5) {
      ++within;
    }
  }
  EXPECT_GE(within, 95);
}

TEST(RegressionTest, EfficiencyAndBudgetAtEveryBudget) {
  const auto game = RandomMobiusGame(12, 0.05, 3);
  const double total = game->EvaluateBits((1u << 12) - 1) - game->EvaluateBits(0);
  for (std::uint64_t budget = 32; budget <= 8192; budget *= 2) {
    for (bool pairing : {false, true}) {
      const auto est = ShapleyRegression(*game, {budget, budget, pairing});
      EXPECT_NEAR(std::accumulate(est.values.begin(), est.values.end(), 0.0), total,
                  1e-10);
      EXPECT_LE(est.evaluations_used, budget);
      for (double s : est.stderrs) {
        EXPECT_GE(s, 0.0);
        EXPECT_FALSE(std::isnan(s));
      }
    }
  }
}

TEST(RegressionTest, TooFewPairsIsAnEstimationError) {
  // Complement pairs add one equation each; 11 free directions need more than 5.
  const auto game = RandomMobiusGame(12, 0.05, 3);
  EXPECT_THROW(ShapleyRegression(*game, {14, 0, true}), EstimationError);
}

TEST(RegressionTest, RejectsTinyBudget) {
  const auto game = RandomMobiusGame(6, 0.5, 1);
  EXPECT_THROW(ShapleyRegression(*game, {7, 0, false}), std::invalid_argument);
}

TEST(ApproxTest, McBudgetNeverExceeded) {
  for (int d : {2, 5, 9}) {
    const auto game = RandomMobiusGame(d, 0.5, d);
    for (std::uint64_t budget : {std::uint64_t(d + 1), std::uint64_t(7 * d), std::uint64_t(500)}) {
      for (bool pairing : {false, true}) {
        if (pairing && budget < 2u * (d + 1)) continue;
        const auto est = ShapleyMcPermutation(*game, {budget, 3, pairing});
        EXPECT_LE(est.evaluations_used, budget);
        EXPECT_GT(est.evaluations_used, 0u);
      }
    }
  }
}

TEST(ApproxTest, ConvergenceOnSparsePolynomial) {
  const MaskedGame game(MaskedModel(RandomSparsePolynomial(12, 3, 12, 1),
                                    std::vector<double>(12, 1.0),
                                    std::vector<double>(12, 0.0)));
  const auto exact = ShapleyValueExact(game).values;
  for (auto estimator : {Estimator::kMonteCarlo, Estimator::kRegression}) {
    std::vector<double> mse;
    for (std::uint64_t budget = 128; budget <= 8192; budget *= 2) {
      double total = 0.0;
      for (std::uint64_t r = 0; r < 20; ++r) {
        const Budget b{budget, r, false};
        const auto est = estimator == Estimator::kMonteCarlo
                             ? ShapleyMcPermutation(game, b)
                             : ShapleyRegression(game, b);
        total += Mse(est.values, exact);
      }
      mse.push_back(total / 20);
    }
    int inversions = 0;
    for (std::size_t k = 1; k < mse.size(); ++k) {
      if (mse[k] > mse[k - 1] && mse[k] > 1e-10) ++inversions;
    }
    EXPECT_LE(inversions, 1) << EstimatorName(estimator);
  }
}

TEST(ApproxTest, PairingReducesStandardError) {
  const auto game = SymmetricGame(10, {0, 0.1, 0.5, 1.4, 2.0, 2.2, 3.5, 5.0, 5.1, 7.0, 9.0});
  for (auto estimator : {Estimator::kMonteCarlo, Estimator::kRegression}) {
    double paired = 0.0, unpaired = 0.0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      for (bool pairing : {false, true}) {
        const Budget b{320, seed, pairing};
        const auto est = estimator == Estimator::kMonteCarlo
                             ? ShapleyMcPermutation(*game, b)
                             : ShapleyRegression(*game, b);
        const double mean =
            std::accumulate(est.stderrs.begin(), est.stderrs.end(), 0.0) / 10;
        (pairing ? paired : unpaired) += mean;
      }
    }
    EXPECT_LE(paired, unpaired) << EstimatorName(estimator);
  }
}

TEST(ApproxTest, DefaultEstimator) {
  EXPECT_EQ(DefaultEstimator(12, true), Estimator::kMonteCarlo);
  EXPECT_EQ(DefaultEstimator(40, true), Estimator::kMonteCarlo);
  EXPECT_EQ(DefaultEstimator(41, true), Estimator::kRegression);
  EXPECT_EQ(DefaultEstimator(12, false), Estimator::kRegression);
}

TEST(MetaApproxTest, RowSumWithinStandardErrors) {
  const MaskedModel m(RandomSparsePolynomial(15, 3, 10, 5), std::vector<double>(15, 1.0),
                      std::vector<double>(15, 0.0));
  const auto method = std::make_shared<GradientTimesInputMethod>(m);
  const auto dm = MetaAttributionApprox(method, {2000, 7, false}, {0},
                                        Estimator::kMonteCarlo);
  ASSERT_EQ(dm.rows(), 1u);
  double sum = 0.0, var = 0.0;
  for (int j = 0; j < 15; ++j) {
    sum += dm.at(0, j);
    var += dm.stderrs[j] * dm.stderrs[j];
  }
  EXPECT_EQ(dm.stderrs[0], 0.0);
  EXPECT_LE(std::abs(sum - dm.first_order[0]), 3 * std::sqrt(var) + 1e-9);
}

TEST(MetaApproxTest, ExhaustiveBudgetMatchesExact) {
  const auto sv = std::make_shared<ShapleyMethod>(TableGame(6, oracle::RandomTable(6, 8)));
  const auto exact = MetaAttributionExact(*sv);
  const auto approx = MetaAttributionApprox(sv, {32, 1, false}, {0, 1, 2, 3, 4, 5},
                                            Estimator::kRegression);
  EXPECT_LT(oracle::MaxAbsDiff(approx.entries, exact.entries), 1e-8);
}

TEST(MetaApproxTest, AdditiveOffDiagonalNearZero) {
  const auto sv = std::make_shared<ShapleyMethod>(*AdditiveGame({1, 2, 3, 4, 5}));
  const auto dm = MetaAttributionApprox(sv, {60, 2, false}, {3}, Estimator::kMonteCarlo);
  for (int j = 0; j < 5; ++j) {
    if (j == 3) {
      EXPECT_NEAR(dm.at(0, j), 4.0, 1e-12);
    } else {
      EXPECT_LE(std::abs(dm.at(0, j)), 3 * dm.stderrs[j] + 1e-12);
    }
  }
}

TEST(MetaApproxTest, ErrorsNameTheTarget) {
  const auto sv = std::make_shared<ShapleyMethod>(TableGame(6, oracle::RandomTable(6, 8)));
  try {
    MetaAttributionApprox(sv, {3, 1, false}, {4}, Estimator::kMonteCarlo);
    FAIL() << "expected an error";
  } catch (const std::exception& e) {
    EXPECT_NE(std::string(e.what()).find("target 4"), std::string::npos) << e.what();
  }
}

TEST(MetaApproxTest, ThreadCountDoesNotChangeResult) {
  const auto sv = std::make_shared<ShapleyMethod>(TableGame(7, oracle::RandomTable(7, 2)));
  const std::vector<int> targets = {0, 2, 5};
  const auto a = MetaAttributionApprox(sv, {70, 4, true}, targets, Estimator::kMonteCarlo, 1);
  const auto b = MetaAttributionApprox(sv, {70, 4, true}, targets, Estimator::kMonteCarlo, 3);
  EXPECT_EQ(a.entries, b.entries);
  EXPECT_EQ(a.stderrs, b.stderrs);
}

}  // namespace
}  // namespace metagame
