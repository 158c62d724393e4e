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

#ifndef METAGAME_MOBIUS_H_
#define METAGAME_MOBIUS_H_

#include <cstdint>
#include <map>
#include <vector>

#include "metagame/coalition.h"
#include "metagame/game.h"
#include "metagame/options.h"

namespace metagame {

// Sparse Moebius coefficients m_T of a game, keyed by bit pattern. Iteration
// order is ascending bit pattern.
class MobiusExpansion {
 public:
  explicit MobiusExpansion(int d);

  int d() const { return d_; }
  const std::map<std::uint64_t, double>& coefficients() const {
    return coefficients_;
  }
  std::size_t size() const { return coefficients_.size(); }

  // Returns 0 for absent coalitions.
  double coefficient(const Coalition& t) const;
  // Adds to an existing coefficient; a zero result stays stored.
  void Add(const Coalition& t, double value);
  void Set(const Coalition& t, double value);

  // Players touched by at least one stored coefficient.
  std::uint64_t support_mask() const;

 private:
  void Check(const Coalition& t) const;

  int d_;
  std::map<std::uint64_t, double> coefficients_;
};

// Dense Moebius transform of a table of length 2^d (returns a new table).
std::vector<double> MobiusTransformTable(std::vector<double> table);

// m_S = sum_{T subset S} (-1)^{|S|-|T|} v(T); coefficients with
// |m| <= options.sparsity_threshold are dropped. Evaluates v once per coalition.
MobiusExpansion MobiusTransform(const ValueOracle& oracle,
                                const EngineOptions& options = {});
MobiusExpansion MobiusFromTable(int d, const std::vector<double>& table,
                                const EngineOptions& options = {});

// sum_{T subset S, T stored} m_T, accumulated in ascending bit order.
double MobiusEvaluate(const MobiusExpansion& expansion, const Coalition& s);

// Dense table of the game an expansion represents.
std::vector<double> MobiusToTable(const MobiusExpansion& expansion,
                                  const EngineOptions& options = {});

// A game given by its Moebius expansion.
class MobiusGame final : public ValueOracle {
 public:
  explicit MobiusGame(MobiusExpansion expansion);
  const MobiusExpansion& expansion() const { return expansion_; }

 protected:
  double Value(std::uint64_t bits) const override;

 private:
  MobiusExpansion expansion_;
};

}  // namespace metagame

#endif  // METAGAME_MOBIUS_H_
