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

#ifndef METAGAME_FIRST_ORDER_H_
#define METAGAME_FIRST_ORDER_H_

#include <cstdint>
#include <memory>
#include <vector>

#include "metagame/attribution.h"
#include "metagame/coalition.h"
#include "metagame/game.h"
#include "metagame/model.h"
#include "metagame/options.h"

namespace metagame {

inline constexpr int kDefaultIgSteps = 256;

// (x_i - b_i) * d f_S / d x_i at x, where f_S keeps the features in S and
// freezes the rest at the baseline. Requires i in S.
double GradientTimesInput(const MaskedModel& masked, const Coalition& s, int i);

// Midpoint-rule integrated gradients of f_S for feature i:
// (x_i - b_i) * (1/steps) * sum_k d f(b + a_k (x_S - b)) / d x_i with
// a_k = (k + 1/2) / steps. Requires i in S and steps >= 1.
double IntegratedGradients(const MaskedModel& masked, const Coalition& s, int i,
                           int steps = kDefaultIgSteps);

// A first-order method phi_i(S; f, x) that can be restricted to the features
// in S (absent features held at the baseline).
class AttributionMethod {
 public:
  virtual ~AttributionMethod() = default;

  virtual MethodTag tag() const = 0;
  virtual int d() const = 0;
  // True when restricted values are exact up to rounding (no quadrature).
  virtual bool exact() const = 0;

  // phi_i(S). Throws std::invalid_argument unless i in S.
  double Restricted(const Coalition& s, int i) const;

  // phi_i([d]) for every i.
  AttributionVector FirstOrder() const;

  // The metagame of target i as a dense table over the d-1 other players:
  // out[RemoveBit(K, i)] = phi_i(K + {i}). The default evaluates Restricted
  // per coalition (in parallel when options.threads > 1).
  virtual std::vector<double> MetagameTable(int i,
                                            const EngineOptions& options) const;

 protected:
  // `s` contains i and is below 2^d.
  virtual double RestrictedImpl(std::uint64_t s, int i) const = 0;
  virtual std::vector<double> InputPoint() const { return {}; }
};

using MethodPtr = std::shared_ptr<const AttributionMethod>;

// Exact Shapley value on a game. The game is enumerated once at construction
// and everything downstream (restrictions, metagames) reuses that table.
class ShapleyMethod final : public AttributionMethod {
 public:
  explicit ShapleyMethod(const ValueOracle& oracle,
                         const EngineOptions& options = {});

  MethodTag tag() const override { return MethodTag::kShapley; }
  int d() const override { return d_; }
  bool exact() const override { return true; }

  const std::vector<double>& table() const { return table_; }
  const std::vector<double>& mobius_table() const { return mobius_; }
  const std::vector<double>& values() const { return phi_; }

  // g[S] = phi_i^SV(S) for every S, which is 0 when i is not in S.
  std::vector<double> RestrictedTable(int i) const;

  // Moebius-and-zeta sweep instead of one subgame per coalition.
  std::vector<double> MetagameTable(int i,
                                    const EngineOptions& options) const override;

 protected:
  double RestrictedImpl(std::uint64_t s, int i) const override;

 private:
  int d_;
  std::vector<double> table_;
  std::vector<double> mobius_;
  std::vector<double> phi_;
};

class GradientTimesInputMethod final : public AttributionMethod {
 public:
  explicit GradientTimesInputMethod(MaskedModel masked);

  MethodTag tag() const override { return MethodTag::kGradientTimesInput; }
  int d() const override { return masked_.d(); }
  bool exact() const override {
    return masked_.model().differentiability() == Differentiability::kExact;
  }
  const MaskedModel& masked() const { return masked_; }

 protected:
  double RestrictedImpl(std::uint64_t s, int i) const override;
  std::vector<double> InputPoint() const override { return masked_.x(); }

 private:
  MaskedModel masked_;
};

class IntegratedGradientsMethod final : public AttributionMethod {
 public:
  // Throws std::invalid_argument if steps < 1.
  IntegratedGradientsMethod(MaskedModel masked, int steps = kDefaultIgSteps);

  MethodTag tag() const override { return MethodTag::kIntegratedGradients; }
  int d() const override { return masked_.d(); }
  bool exact() const override { return false; }
  int steps() const { return steps_; }
  const MaskedModel& masked() const { return masked_; }

 protected:
  double RestrictedImpl(std::uint64_t s, int i) const override;
  std::vector<double> InputPoint() const override { return masked_.x(); }

 private:
  MaskedModel masked_;
  int steps_;
};

// phi_i(S) for any method; i must be in S.
double RestrictedAttribution(const AttributionMethod& method, const Coalition& s,
                             int i);

}  // namespace metagame

#endif  // METAGAME_FIRST_ORDER_H_
