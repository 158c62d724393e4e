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

#include "metagame/first_order.h"

#include <bit>
#include <stdexcept>
#include <string>
#include <utility>

#include "metagame/kernels.h"
#include "metagame/parallel.h"
#include "metagame/shapley.h"

namespace metagame {
namespace {

void CheckMember(const Coalition& s, int i, int d) {
  if (s.d() != d) {
    throw std::invalid_argument("coalition over " + std::to_string(s.d()) +
                                " players used with a " + std::to_string(d) +
                                "-player method");
  }
  if (i < 0 || i >= d || !s.contains(i)) {
    throw std::invalid_argument("player " + std::to_string(i) +
                                " is not in the coalition " + s.ToString());
  }
}

double GxiBits(const MaskedModel& masked, std::uint64_t s, int i) {
  std::vector<double> point(masked.d());
  masked.PointInto(s, point);
  return (masked.x()[i] - masked.baseline()[i]) * masked.model().Partial(point, i);
}

double IgBits(const MaskedModel& masked, std::uint64_t s, int i, int steps) {
  const int d = masked.d();
  std::vector<double> target(d);
  masked.PointInto(s, target);
  const auto& b = masked.baseline();
  std::vector<double> point(d);
  double sum = 0.0;
  for (int k = 0; k < steps; ++k) {
    const double alpha = (k + 0.5) / steps;
    for (int m = 0; m < d; ++m) point[m] = b[m] + alpha * (target[m] - b[m]);
    sum += masked.model().Partial(point, i);
  }
  return (masked.x()[i] - b[i]) * (sum / steps);
}

}  // namespace

std::string_view MethodTagName(MethodTag tag) {
  switch (tag) {
    case MethodTag::kShapley:
      return "sv";
    case MethodTag::kGradientTimesInput:
      return "gxi";
    case MethodTag::kIntegratedGradients:
      return "ig";
    case MethodTag::kExternal:
      return "external";
  }
  return "unknown";
}

double GradientTimesInput(const MaskedModel& masked, const Coalition& s, int i) {
  CheckMember(s, i, masked.d());
  return GxiBits(masked, s.bits(), i);
}

double IntegratedGradients(const MaskedModel& masked, const Coalition& s, int i,
                           int steps) {
  CheckMember(s, i, masked.d());
  if (steps < 1) throw std::invalid_argument("steps must be positive");
  return IgBits(masked, s.bits(), i, steps);
}

double AttributionMethod::Restricted(const Coalition& s, int i) const {
  CheckMember(s, i, d());
  return RestrictedImpl(s.bits(), i);
}

AttributionVector AttributionMethod::FirstOrder() const {
  AttributionVector out;
  out.method = tag();
  out.input = InputPoint();
  out.values.resize(d());
  const std::uint64_t full = Coalition::FullMask(d());
  for (int i = 0; i < d(); ++i) out.values[i] = RestrictedImpl(full, i);
  return out;
}

std::vector<double> AttributionMethod::MetagameTable(
    int i, const EngineOptions& options) const {
  const int n = d();
  RequireExact(n, options);
  std::vector<double> out(std::size_t{1} << (n - 1));
  const std::uint64_t bit = std::uint64_t{1} << i;
  ParallelFor(out.size(), options.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      out[k] = RestrictedImpl(InsertZeroBit(k, i) | bit, i);
    }
  });
  return out;
}

ShapleyMethod::ShapleyMethod(const ValueOracle& oracle,
                             const EngineOptions& options)
    : d_(oracle.d()), table_(EnumerateGame(oracle, options)) {
  mobius_ = table_;
  kernels::MobiusInPlace(mobius_);
  phi_ = ShapleyFromTable(d_, table_);
}

double ShapleyMethod::RestrictedImpl(std::uint64_t s, int i) const {
  if (s == Coalition::FullMask(d_)) return phi_[i];
  return ShapleyOnSubgame(table_, s, i);
}

std::vector<double> ShapleyMethod::RestrictedTable(int i) const {
  // phi_i(S) = sum_{T subset S, i in T} m_T / |T|: scale, then subset-sum.
  std::vector<double> g(table_.size(), 0.0);
  const std::uint64_t bit = std::uint64_t{1} << i;
  for (std::size_t t = 0; t < g.size(); ++t) {
    if (t & bit) g[t] = mobius_[t] / std::popcount(t);
  }
  kernels::ZetaInPlace(g);
  return g;
}

std::vector<double> ShapleyMethod::MetagameTable(int i,
                                                 const EngineOptions&) const {
  if (d_ == 1) return {phi_[0]};
  const std::vector<double> g = RestrictedTable(i);
  std::vector<double> out(g.size() / 2);
  kernels::BitSlice(g, i, out);
  return out;
}

GradientTimesInputMethod::GradientTimesInputMethod(MaskedModel masked)
    : masked_(std::move(masked)) {}

double GradientTimesInputMethod::RestrictedImpl(std::uint64_t s, int i) const {
  return GxiBits(masked_, s, i);
}

IntegratedGradientsMethod::IntegratedGradientsMethod(MaskedModel masked,
                                                     int steps)
    : masked_(std::move(masked)), steps_(steps) {
  if (steps < 1) throw std::invalid_argument("steps must be positive");
}

double IntegratedGradientsMethod::RestrictedImpl(std::uint64_t s, int i) const {
  return IgBits(masked_, s, i, steps_);
}

double RestrictedAttribution(const AttributionMethod& method, const Coalition& s,
                             int i) {
  return method.Restricted(s, i);
}

}  // namespace metagame
