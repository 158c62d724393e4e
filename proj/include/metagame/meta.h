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

#ifndef METAGAME_META_H_
#define METAGAME_META_H_

#include <optional>
#include <string_view>
#include <vector>

#include "metagame/first_order.h"
#include "metagame/game.h"
#include "metagame/interactions.h"
#include "metagame/options.h"

namespace metagame {

inline constexpr std::string_view kOrientation = "source_to_target_by_row";

// Directional meta-attributions. Row r decomposes the attribution of feature
// targets[r]; entry (r, j) is the influence of source j on that attribution.
// The diagonal entry (r, targets[r]) is the pure individual effect.
struct DirectionalMatrix {
  int d = 0;
  MethodTag base = MethodTag::kShapley;
  std::vector<int> targets;
  std::vector<double> entries;      // row-major targets.size() x d
  std::vector<double> first_order;  // phi_{targets[r]}
  std::vector<double> stderrs;      // same shape as entries; empty when exact

  std::size_t rows() const { return targets.size(); }
  double at(std::size_t row, int source) const { return entries[row * d + source]; }
  // Entry for target i and source j; throws std::out_of_range if i is not a
  // target.
  double entry(int target, int source) const;
  bool complete() const { return static_cast<int>(targets.size()) == d; }
};

// Attributions phi_i(S) computed elsewhere, dense per declared target:
// values[r][RemoveBit(S, i)] holds phi_i(S) for target i = targets[r] and every
// S containing i. A missing entry is std::nullopt.
struct ExternalAttributionTable {
  int d = 0;
  std::vector<int> targets;
  std::vector<std::vector<std::optional<double>>> values;

  // Throws std::invalid_argument on inconsistent shapes or duplicate targets.
  void Validate() const;
};

// The base method behind an external table. Throws MissingCoalitionError when
// a requested (S, i) value is absent.
class ExternalMethod final : public AttributionMethod {
 public:
  explicit ExternalMethod(ExternalAttributionTable table);

  MethodTag tag() const override { return MethodTag::kExternal; }
  int d() const override { return table_.d; }
  bool exact() const override { return true; }
  const ExternalAttributionTable& table() const { return table_; }

  std::vector<double> MetagameTable(int i,
                                    const EngineOptions& options) const override;

 protected:
  double RestrictedImpl(std::uint64_t s, int i) const override;

 private:
  std::size_t RowOf(int i) const;

  ExternalAttributionTable table_;
  std::vector<int> row_of_;
};

// nu(K) = phi_i(K + {i}) over the d-1 players other than i (compacted
// indices: player j maps to j - (j > i)).
class MetaGameOracle final : public ValueOracle {
 public:
  // Requires method.d() >= 2.
  MetaGameOracle(MethodPtr method, int target);
  int target() const { return target_; }

  static int SourceToPlayer(int source, int target) {
    return source < target ? source : source - 1;
  }
  static int PlayerToSource(int player, int target) {
    return player < target ? player : player + 1;
  }

 protected:
  double Value(std::uint64_t bits) const override;

 private:
  MethodPtr method_;
  int target_;
};

// Exact meta-attributions for every target. One metagame table per target is
// built in a single sweep and every source is read off it by reweighting.
DirectionalMatrix MetaAttributionExact(const AttributionMethod& method,
                                       const EngineOptions& options = {});

// |sum_j entries(r, j) - first_order[r]| per row, summed in ascending j.
std::vector<double> CheckHierarchicalEfficiency(const DirectionalMatrix& dm);

// pairs(i, j) = entry(i, j) + entry(j, i), singles(i) = entry(i, i). Needs a
// complete matrix.
PairIndex Symmetrize(const DirectionalMatrix& dm);

// Shapley-Taylor pair interaction of sources j and k inside the metagame of
// target i.
double MetaPairInteraction(const AttributionMethod& method, int target, int j,
                           int k, const EngineOptions& options = {});

}  // namespace metagame

#endif  // METAGAME_META_H_
