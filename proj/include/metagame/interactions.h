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

#ifndef METAGAME_INTERACTIONS_H_
#define METAGAME_INTERACTIONS_H_

#include <string_view>
#include <vector>

#include "metagame/first_order.h"
#include "metagame/game.h"
#include "metagame/mobius.h"
#include "metagame/model.h"
#include "metagame/options.h"

namespace metagame {

enum class PairTag { kStii, kFsii, kTwoShapley, kSop, kMobius2, kSymmetrizedMeta };
enum class SerialTag { kSerialShapley, kIntegratedHessians };

std::string_view PairTagName(PairTag tag);
std::string_view SerialTagName(SerialTag tag);

// Order-2 set-based index: one value per player and one per unordered pair.
// Each pair value is stored once; pair(i, j) and pair(j, i) read the same slot.
class PairIndex {
 public:
  PairIndex(int d, PairTag tag);

  int d() const { return d_; }
  PairTag tag() const { return tag_; }

  double single(int i) const { return singles_[i]; }
  void set_single(int i, double value) { singles_[i] = value; }
  std::vector<double>& singles() { return singles_; }
  const std::vector<double>& singles() const { return singles_; }

  // Zero on the diagonal.
  double pair(int i, int j) const;
  void set_pair(int i, int j, double value);

  // Row-major d x d view with zero diagonal.
  std::vector<double> PairMatrix() const;

  // singles[i] + 1/2 * sum_{j != i} pair(i, j), summed in ascending j.
  std::vector<double> HalfPairDecomposition() const;

 private:
  std::size_t Slot(int i, int j) const;

  int d_;
  PairTag tag_;
  std::vector<double> singles_;
  std::vector<double> pairs_;
};

// Serial index: entry (i, j) is the outer attribution of feature j applied to
// the inner attribution of feature i.
struct SerialMatrix {
  int d = 0;
  SerialTag tag = SerialTag::kSerialShapley;
  std::vector<double> entries;  // row-major d x d

  double at(int i, int j) const { return entries[i * d + j]; }
  std::vector<double> RowSums() const;
};

// psi_{i,j} = Shapley value of player j in the game S -> phi_i^SV(S).
SerialMatrix SerialShapley(const ValueOracle& game,
                           const EngineOptions& options = {});
SerialMatrix SerialShapley(const MaskedModel& masked,
                           const EngineOptions& options = {});

// psi_{i,j} = integrated gradient of feature j applied to
// h_i(z) = phi_i^IG(f, z), both integrals by the midpoint rule with `steps`
// nodes. Exact second derivatives when the model has them; otherwise central
// differences (step 1e-4) on the inner integral.
SerialMatrix IntegratedHessians(const MaskedModel& masked,
                                int steps = kDefaultIgSteps);

// Shapley-Taylor index from discrete second derivatives of the game.
PairIndex StiiPairwise(const ValueOracle& game, const EngineOptions& options = {});
PairIndex StiiFromTable(int d, const std::vector<double>& table);

// pairs = sum_{S superset of {i,j}} m_S / C(|S|, 2); singles = m_{i}.
PairIndex StiiViaMobius(const MobiusExpansion& expansion);

// Faithful Shapley interaction index, order 2, from its Moebius form.
PairIndex FsiiViaMobius(const MobiusExpansion& expansion);

// Order-2 n-Shapley values from their Moebius form: pairs are the pairwise
// Shapley interaction index sum_{S superset of {i,j}} m_S / (|S| - 1), and
// singles = phi_i^SV - 1/2 * sum_j pairs.
PairIndex TwoShapleyViaMobius(const MobiusExpansion& expansion);

// Pairs m_{i,j}, singles m_{i}.
PairIndex MobiusPairs(const MobiusExpansion& expansion);

struct SopResult {
  PairIndex set_based;
  // Row-major d x d; entry (i, j) = psi_{i,j} (target i, source j), zero
  // diagonal.
  std::vector<double> directional;
};

// Sum of Powers built from restricted integrated gradients by direct
// summation over coalitions.
SopResult SopPairwise(const MaskedModel& masked, int steps = kDefaultIgSteps,
                      const EngineOptions& options = {});

}  // namespace metagame

#endif  // METAGAME_INTERACTIONS_H_
