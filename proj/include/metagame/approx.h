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

#ifndef METAGAME_APPROX_H_
#define METAGAME_APPROX_H_

#include <cstdint>
#include <string_view>
#include <vector>

#include "metagame/first_order.h"
#include "metagame/game.h"
#include "metagame/meta.h"

namespace metagame {

struct Budget {
  // Oracle calls an estimator may make; repeated coalitions are free.
  std::uint64_t max_evaluations = 0;
  std::uint64_t seed = 0;
  // MC: antithetic (reversed) permutations. Regression: complement pairs.
  bool pairing = false;
};

struct EstimateWithError {
  std::vector<double> values;
  std::vector<double> stderrs;  // >= 0, never NaN
  std::uint64_t evaluations_used = 0;
};

enum class Estimator { kMonteCarlo, kRegression };

std::string_view EstimatorName(Estimator estimator);

// Permutation sampling. Runs floor(max_evaluations / (d + 1)) permutations
// (rounded down to an even count when pairing), each walking its prefix chain.
// Throws std::invalid_argument if the budget is below d + 1.
EstimateWithError ShapleyMcPermutation(const ValueOracle& oracle,
                                       const Budget& budget);

// Shapley-kernel weighted least squares with the efficiency constraint imposed
// exactly. With max_evaluations >= 2^d every coalition is used with its exact
// kernel weight and the result is the Shapley value. Otherwise coalitions are
// drawn from the kernel distribution and standard errors come from a bootstrap
// over the draws. Throws std::invalid_argument if the budget is below d + 2 and
// EstimationError if the sampled system is singular.
EstimateWithError ShapleyRegression(const ValueOracle& oracle, const Budget& budget);

// MC when every target is wanted and d <= 40, regression otherwise.
Estimator DefaultEstimator(int d, bool all_targets);

// Sampled meta-attributions for the requested targets, one metagame per target
// with its own random stream. Each metagame receives the full budget. The
// diagonal and the decomposed first-order value are evaluated exactly.
DirectionalMatrix MetaAttributionApprox(const MethodPtr& method,
                                        const Budget& budget,
                                        const std::vector<int>& targets,
                                        Estimator estimator, int threads = 1);

}  // namespace metagame

#endif  // METAGAME_APPROX_H_
