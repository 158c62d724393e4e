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

#include <atomic>
#include <bit>
#include <stdexcept>

#include "metagame/kernels.h"

namespace metagame {
namespace {

std::atomic<bool> g_weight_fault{false};

void CheckTable(int n, std::size_t size) {
  if (n < 1 || n > kMaxPlayers || n >= 40 || size != (std::size_t{1} << n)) {
    throw std::invalid_argument("table length does not match 2^n");
  }
}

}  // namespace

std::vector<double> ShapleySizeWeights(int n) {
  if (n < 1) throw std::invalid_argument("need at least one player");
  std::vector<double> w(n);
  w[0] = 1.0 / n;
  for (int s = 0; s + 1 < n; ++s) {
    w[s + 1] = w[s] * static_cast<double>(s + 1) / static_cast<double>(n - 1 - s);
  }
  if (g_weight_fault.load(std::memory_order_relaxed) && n >= 2) w[0] *= 1.5;
  return w;
}

std::vector<double> ExpandSizeWeights(int n, std::span<const double> size_weights) {
  std::vector<double> out(std::size_t{1} << n);
  for (std::size_t s = 0; s < out.size(); ++s) {
    const int size = std::popcount(s);
    out[s] = size < static_cast<int>(size_weights.size()) ? size_weights[size] : 0.0;
  }
  return out;
}

std::vector<double> ShapleyFromTable(int n, std::span<const double> table) {
  CheckTable(n, table.size());
  std::vector<double> phi(n, 0.0);
  if (n == 1) {
    phi[0] = table[1] - table[0];
    return phi;
  }
  const std::vector<double> weights = ExpandSizeWeights(n, ShapleySizeWeights(n));
  for (int i = 0; i < n; ++i) phi[i] = kernels::MarginalDot(table, weights, i);
  return phi;
}

double ShapleyOnSubgame(std::span<const double> table, std::uint64_t active,
                        int i) {
  const std::uint64_t bit = std::uint64_t{1} << i;
  if ((active & bit) == 0) {
    throw std::invalid_argument("player " + std::to_string(i) +
                                " is not in the active coalition");
  }
  const int n = std::popcount(active);
  const std::vector<double> w = ShapleySizeWeights(n);
  double sum = 0.0;
  ForEachSubmaskAscending(active & ~bit, [&](std::uint64_t t) {
    sum += w[std::popcount(t)] * (table[t | bit] - table[t]);
  });
  return sum;
}

AttributionVector ShapleyValueExact(const ValueOracle& oracle,
                                    const EngineOptions& options) {
  const std::vector<double> table = EnumerateGame(oracle, options);
  return {ShapleyFromTable(oracle.d(), table), MethodTag::kShapley, {}};
}

std::vector<double> ShapleyFromMobius(const MobiusExpansion& expansion) {
  std::vector<double> phi(expansion.d(), 0.0);
  for (const auto& [bits, value] : expansion.coefficients()) {
    if (bits == 0) continue;
    const double share = value / std::popcount(bits);
    for (std::uint64_t rest = bits; rest != 0; rest &= rest - 1) {
      phi[std::countr_zero(rest)] += share;
    }
  }
  return phi;
}

namespace testing {

ScopedShapleyWeightFault::ScopedShapleyWeightFault()
    : previous_(g_weight_fault.exchange(true)) {}

ScopedShapleyWeightFault::~ScopedShapleyWeightFault() {
  g_weight_fault.store(previous_);
}

}  // namespace testing
}  // namespace metagame
