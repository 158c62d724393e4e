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

#include "metagame/mobius.h"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "metagame/kernels.h"

namespace metagame {

MobiusExpansion::MobiusExpansion(int d) : d_(d) {
  if (d < 1 || d > kMaxPlayers) {
    throw std::invalid_argument("player count must be in [1, 63], got " +
                                std::to_string(d));
  }
}

void MobiusExpansion::Check(const Coalition& t) const {
  if (t.d() != d_) {
    throw std::invalid_argument("coalition over " + std::to_string(t.d()) +
                                " players used with a " + std::to_string(d_) +
                                "-player expansion");
  }
}

double MobiusExpansion::coefficient(const Coalition& t) const {
  Check(t);
  auto it = coefficients_.find(t.bits());
  return it == coefficients_.end() ? 0.0 : it->second;
}

void MobiusExpansion::Add(const Coalition& t, double value) {
  Check(t);
  coefficients_[t.bits()] += value;
}

void MobiusExpansion::Set(const Coalition& t, double value) {
  Check(t);
  coefficients_[t.bits()] = value;
}

std::uint64_t MobiusExpansion::support_mask() const {
  std::uint64_t mask = 0;
  for (const auto& [bits, value] : coefficients_) mask |= bits;
  return mask;
}

std::vector<double> MobiusTransformTable(std::vector<double> table) {
  kernels::MobiusInPlace(table);
  return table;
}

MobiusExpansion MobiusFromTable(int d, const std::vector<double>& table,
                                const EngineOptions& options) {
  RequireExact(d, options);
  if (table.size() != (std::size_t{1} << d)) {
    throw std::invalid_argument("table length does not match 2^d");
  }
  const std::vector<double> dense = MobiusTransformTable(table);
  MobiusExpansion out(d);
  for (std::size_t s = 0; s < dense.size(); ++s) {
    if (std::abs(dense[s]) > options.sparsity_threshold) {
      out.Set(Coalition(s, d), dense[s]);
    }
  }
  return out;
}

MobiusExpansion MobiusTransform(const ValueOracle& oracle,
                                const EngineOptions& options) {
  return MobiusFromTable(oracle.d(), EnumerateGame(oracle, options), options);
}

double MobiusEvaluate(const MobiusExpansion& expansion, const Coalition& s) {
  if (s.d() != expansion.d()) {
    throw std::invalid_argument("coalition dimension does not match expansion");
  }
  double sum = 0.0;
  for (const auto& [bits, value] : expansion.coefficients()) {
    if ((bits & ~s.bits()) == 0) sum += value;
  }
  return sum;
}

std::vector<double> MobiusToTable(const MobiusExpansion& expansion,
                                  const EngineOptions& options) {
  RequireExact(expansion.d(), options);
  std::vector<double> table(std::size_t{1} << expansion.d(), 0.0);
  for (const auto& [bits, value] : expansion.coefficients()) table[bits] = value;
  kernels::ZetaInPlace(table);
  return table;
}

MobiusGame::MobiusGame(MobiusExpansion expansion)
    : ValueOracle(expansion.d()), expansion_(std::move(expansion)) {}

double MobiusGame::Value(std::uint64_t bits) const {
  return MobiusEvaluate(expansion_, Coalition(bits, d()));
}

}  // namespace metagame
