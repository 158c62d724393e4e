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

#ifndef METAGAME_OPTIONS_H_
#define METAGAME_OPTIONS_H_

namespace metagame {

inline constexpr int kDefaultMaxExactPlayers = 24;
inline constexpr double kDefaultSparsityThreshold = 1e-12;

// Knobs shared by the exact engines.
struct EngineOptions {
  // Largest d for which 2^d coalitions are enumerated.
  int max_exact_players = kDefaultMaxExactPlayers;
  // Moebius coefficients with |m| <= threshold are not stored.
  double sparsity_threshold = kDefaultSparsityThreshold;
  // Worker threads for coalition evaluation; reductions stay in canonical order.
  int threads = 1;
};

// Throws CapacityError when d exceeds the exact-engine limit.
void RequireExact(int d, const EngineOptions& options);

}  // namespace metagame

#endif  // METAGAME_OPTIONS_H_
