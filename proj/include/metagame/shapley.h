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

#ifndef METAGAME_SHAPLEY_H_
#define METAGAME_SHAPLEY_H_

#include <cstdint>
#include <span>
#include <vector>

#include "metagame/attribution.h"
#include "metagame/game.h"
#include "metagame/mobius.h"
#include "metagame/options.h"

namespace metagame {

// w(s) = 1 / (n * C(n-1, s)) for s = 0..n-1, built with the recurrence
// w(s+1) = w(s) * (s+1) / (n-1-s) so no factorial is ever formed.
std::vector<double> ShapleySizeWeights(int n);

// Per-coalition expansion of size weights: out[S] = size_weights[|S|] over
// 2^n patterns (entries with |S| = n are zero).
std::vector<double> ExpandSizeWeights(int n, std::span<const double> size_weights);

// Shapley values of all n players of a dense table of length 2^n.
std::vector<double> ShapleyFromTable(int n, std::span<const double> table);

// Shapley value of player i in the subgame on `active` (other players held
// absent), summed over submasks in ascending order. Requires i in active.
double ShapleyOnSubgame(std::span<const double> table, std::uint64_t active,
                        int i);

// Exact Shapley value; one evaluation per coalition.
AttributionVector ShapleyValueExact(const ValueOracle& oracle,
                                    const EngineOptions& options = {});

// sum_{S containing i} m_S / |S|.
std::vector<double> ShapleyFromMobius(const MobiusExpansion& expansion);

namespace testing {

// While alive, the size-0 Shapley weight is perturbed. Exists so verification
// harnesses can prove they detect a broken weight.
class ScopedShapleyWeightFault {
 public:
  ScopedShapleyWeightFault();
  ~ScopedShapleyWeightFault();
  ScopedShapleyWeightFault(const ScopedShapleyWeightFault&) = delete;
  ScopedShapleyWeightFault& operator=(const ScopedShapleyWeightFault&) = delete;

 private:
  bool previous_;
};

}  // namespace testing
}  // namespace metagame

#endif  // METAGAME_SHAPLEY_H_
