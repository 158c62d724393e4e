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

#include "metagame/model_zoo.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "metagame/interactions.h"
#include "metagame/mobius.h"
#include "metagame/shapley.h"
#include "oracles.h"

namespace metagame {
namespace {

TEST(ModelZooTest, Table1Model) {
  const auto f = Table1Model();
  const std::vector<double> x = {2.0, 3.0};
  EXPECT_EQ(f->dim(), 2);
  EXPECT_EQ(f->Value(x), 20.0);
  std::vector<double> grad(2);
  f->Gradient(x, grad);
  EXPECT_EQ(grad, (std::vector<double>{10.0, 12.0}));
  std::vector<double> hess(4);
  f->Hessian(x, hess);
  EXPECT_EQ(hess[1], 6.0);
  EXPECT_EQ(hess[2], 6.0);
}

TEST(ModelZooTest, RandomPolynomialIsReproducible) {
  const auto a = RandomSparsePolynomial(7, 3, 9, 42);
  const auto b = RandomSparsePolynomial(7, 3, 9, 42);
  ASSERT_EQ(a->terms().size(), 9u);
  for (std::size_t t = 0; t < 9; ++t) {
    EXPECT_EQ(a->terms()[t].coefficient, b->terms()[t].coefficient);
    EXPECT_EQ(a->terms()[t].exponents, b->terms()[t].exponents);
  }
  const auto c = RandomSparsePolynomial(7, 3, 9, 43);
  EXPECT_NE(a->terms()[0].coefficient, c->terms()[0].coefficient);
}

TEST(ModelZooTest, RandomPolynomialRespectsParameters) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto f = RandomSparsePolynomial(6, 2, 5, seed);
    for (const auto& term : f->terms()) {
      EXPECT_GE(term.coefficient, -2.0);
      EXPECT_LE(term.coefficient, 2.0);
      int support = 0;
      for (int e : term.exponents) {
        EXPECT_TRUE(e == 0 || (e >= 1 && e <= 3));
        support += e > 0;
      }
      EXPECT_GE(support, 1);
      EXPECT_LE(support, 2);
    }
  }
}

TEST(ModelZooTest, RandomPolynomialRejectsInfeasible) {
  EXPECT_THROW(RandomSparsePolynomial(3, 4, 2, 0), std::invalid_argument);
  EXPECT_THROW(RandomSparsePolynomial(3, 0, 2, 0), std::invalid_argument);
  EXPECT_THROW(RandomSparsePolynomial(3, 2, 0, 0), std::invalid_argument);
}

TEST(ModelZooTest, FirstOrderPolynomialIsAdditive) {
  const MaskedModel m(RandomSparsePolynomial(6, 1, 8, 3), std::vector<double>(6, 1.3),
                      std::vector<double>(6, 0.0));
  const auto stii = StiiPairwise(MaskedGame(m));
  for (double v : stii.PairMatrix()) EXPECT_NEAR(v, 0.0, 1e-12);
}

TEST(ModelZooTest, MobiusSupportIsUnionOfMonomialSupports) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int d = 4 + static_cast<int>(seed % 5);
    const auto f = RandomSparsePolynomial(d, 3, 6, seed);
    std::vector<double> x(d);
    for (int k = 0; k < d; ++k) x[k] = 0.5 + 0.25 * k;
    const auto mobius = MobiusTransform(MaskedGame(MaskedModel(f, x, std::vector<double>(d, 0.0))));
    // Monomials with identical supports can cancel; compare against the summed coefficients.
    std::map<std::uint64_t, double> expected;
    for (const auto& term : f->terms()) {
      std::uint64_t support = 0;
      double value = term.coefficient;
      for (int k = 0; k < d; ++k) {
        if (term.exponents[k] > 0) {
          support |= std::uint64_t{1} << k;
          value *= std::pow(x[k], term.exponents[k]);
        }
      }
      expected[support] += value;
    }
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << d); ++s) {
      const auto it = expected.find(s);
      const double want = it == expected.end() ? 0.0 : it->second;
      EXPECT_NEAR(mobius.coefficient(Coalition(s, d)), want, 1e-10) << seed << " " << s;
    }
  }
}

TEST(ModelZooTest, RandomMobiusSparsity) {
  for (double sparsity : {0.05, 0.25, 0.5, 1.0}) {
    const auto game = RandomMobiusGame(8, sparsity, 6);
    const double want = sparsity * 256;
    EXPECT_LE(std::abs(static_cast<double>(game->expansion().size()) - want), 1.0)
        << sparsity;
  }
  EXPECT_EQ(RandomMobiusGame(8, 1e-6, 1)->expansion().size(), 1u);
}

TEST(ModelZooTest, RandomMobiusShapleyMatchesMobiusForm) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto game = RandomMobiusGame(9, 0.2, seed);
    EXPECT_LT(oracle::MaxAbsDiff(ShapleyValueExact(*game).values,
                                 ShapleyFromMobius(game->expansion())),
              1e-9);
  }
}

TEST(ModelZooTest, SingletonOnlyExpansionGivesCoefficients) {
  const std::vector<double> c = {0.5, -1.5, 2.25};
  EXPECT_EQ(ShapleyValueExact(*AdditiveGame(c)).values, c);
}

TEST(ModelZooTest, SymmetricGameHasEqualShares) {
  const auto game = SymmetricGame(5, {0, 1, 3, 4, 4.5, 10});
  for (double v : ShapleyValueExact(*game).values) EXPECT_NEAR(v, 2.0, 1e-12);
  EXPECT_THROW(SymmetricGame(5, {0, 1}), std::invalid_argument);
}

}  // namespace
}  // namespace metagame
