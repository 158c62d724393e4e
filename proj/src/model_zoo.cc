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

#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "metagame/game.h"
#include "metagame/rng.h"

namespace metagame {

std::shared_ptr<const SymbolicModel> Table1Model() {
  return std::make_shared<const SymbolicModel>(
      2, std::vector<Monomial>{{1.0, {1, 0}}, {1.0, {1, 2}}});
}

std::shared_ptr<const SymbolicModel> RandomSparsePolynomial(int d, int max_order,
                                                            int n_terms,
                                                            std::uint64_t seed) {
  if (d < 1 || max_order < 1 || max_order > d || n_terms < 1) {
    throw std::invalid_argument(
        "random polynomial needs 1 <= max_order <= d and n_terms >= 1 (got d=" +
        std::to_string(d) + ", max_order=" + std::to_string(max_order) +
        ", n_terms=" + std::to_string(n_terms) + ")");
  }
  CounterRng rng(seed);
  std::vector<int> players(d);
  std::vector<Monomial> terms;
  terms.reserve(n_terms);
  for (int t = 0; t < n_terms; ++t) {
    const int size = 1 + static_cast<int>(rng.UniformInt(max_order));
    std::iota(players.begin(), players.end(), 0);
    Monomial m{0.0, std::vector<int>(d, 0)};
    for (int k = 0; k < size; ++k) {
      const auto pick = k + static_cast<int>(rng.UniformInt(d - k));
      std::swap(players[k], players[pick]);
      m.exponents[players[k]] = 1 + static_cast<int>(rng.UniformInt(3));
    }
    m.coefficient = rng.Uniform(-2.0, 2.0);
    terms.push_back(std::move(m));
  }
  return std::make_shared<const SymbolicModel>(d, std::move(terms));
}

MobiusExpansion RandomMobiusExpansion(int d, double sparsity, std::uint64_t seed) {
  if (!(sparsity > 0.0 && sparsity <= 1.0)) {
    throw std::invalid_argument("sparsity must lie in (0, 1]");
  }
  if (d < 1 || d > 40) {
    throw std::invalid_argument("random Moebius game needs 1 <= d <= 40");
  }
  const double total = std::ldexp(1.0, d);
  const auto count = static_cast<std::uint64_t>(
      std::max(1.0, std::round(sparsity * total)));
  if (count > (std::uint64_t{1} << 24)) {
    throw std::invalid_argument("random Moebius game would store " +
                                std::to_string(count) + " coefficients");
  }
  CounterRng rng(seed);
  const std::uint64_t universe = std::uint64_t{1} << d;
  std::vector<std::uint64_t> chosen;
  if (count * 4 >= universe) {
    // Dense request: partial shuffle of every coalition.
    std::vector<std::uint64_t> all(universe);
    std::iota(all.begin(), all.end(), 0);
    for (std::uint64_t k = 0; k < count; ++k) {
      std::swap(all[k], all[k + rng.UniformInt(universe - k)]);
    }
    chosen.assign(all.begin(), all.begin() + count);
  } else {
    std::unordered_set<std::uint64_t> seen;
    while (chosen.size() < count) {
      const std::uint64_t s = rng.UniformInt(universe);
      if (seen.insert(s).second) chosen.push_back(s);
    }
  }
  MobiusExpansion expansion(d);
  for (std::uint64_t s : chosen) {
    const double magnitude = rng.Uniform(0.1, 2.0);
    const double sign = (rng() & 1) ? 1.0 : -1.0;
    expansion.Set(Coalition(s, d), sign * magnitude);
  }
  return expansion;
}

std::shared_ptr<const MobiusGame> RandomMobiusGame(int d, double sparsity,
                                                   std::uint64_t seed) {
  return std::make_shared<const MobiusGame>(RandomMobiusExpansion(d, sparsity, seed));
}

std::shared_ptr<const MobiusGame> AdditiveGame(const std::vector<double>& c) {
  const int d = static_cast<int>(c.size());
  MobiusExpansion expansion(d);
  for (int i = 0; i < d; ++i) expansion.Set(Coalition::Of({i}, d), c[i]);
  return std::make_shared<const MobiusGame>(std::move(expansion));
}

std::shared_ptr<const ValueOracle> SymmetricGame(int d, std::vector<double> by_size) {
  if (static_cast<int>(by_size.size()) != d + 1) {
    throw std::invalid_argument("symmetric game needs d + 1 size values");
  }
  return std::make_shared<const FunctionGame>(
      d, [by_size = std::move(by_size)](const Coalition& s) {
        return by_size[s.size()];
      });
}

}  // namespace metagame
