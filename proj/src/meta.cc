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

#include "metagame/meta.h"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include "metagame/errors.h"
#include "metagame/parallel.h"
#include "metagame/shapley.h"

namespace metagame {
namespace {

std::string DescribeMissing(int d, std::size_t compact, int i) {
  const std::uint64_t s = InsertZeroBit(compact, i) | (std::uint64_t{1} << i);
  return "external attribution table has no value for coalition " +
         Coalition(s, d).ToString() + " and target " + std::to_string(i);
}

}  // namespace

double DirectionalMatrix::entry(int target, int source) const {
  auto it = std::find(targets.begin(), targets.end(), target);
  if (it == targets.end()) {
    throw std::out_of_range("feature " + std::to_string(target) +
                            " is not a target of this matrix");
  }
  return at(static_cast<std::size_t>(it - targets.begin()), source);
}

void ExternalAttributionTable::Validate() const {
  if (d < 1 || d > 30) {
    throw std::invalid_argument("external table player count must be in [1, 30]");
  }
  if (values.size() != targets.size()) {
    throw std::invalid_argument("external table has " +
                                std::to_string(values.size()) + " rows for " +
                                std::to_string(targets.size()) + " targets");
  }
  std::vector<bool> seen(d, false);
  for (int t : targets) {
    if (t < 0 || t >= d) {
      throw std::invalid_argument("target " + std::to_string(t) + " out of range");
    }
    if (seen[t]) throw std::invalid_argument("duplicate target " + std::to_string(t));
    seen[t] = true;
  }
}

ExternalMethod::ExternalMethod(ExternalAttributionTable table)
    : table_(std::move(table)) {
  table_.Validate();
  row_of_.assign(table_.d, -1);
  for (std::size_t r = 0; r < table_.targets.size(); ++r) {
    row_of_[table_.targets[r]] = static_cast<int>(r);
  }
}

std::size_t ExternalMethod::RowOf(int i) const {
  if (row_of_[i] < 0) {
    throw MissingCoalitionError("external attribution table declares no target " +
                                std::to_string(i));
  }
  return static_cast<std::size_t>(row_of_[i]);
}

double ExternalMethod::RestrictedImpl(std::uint64_t s, int i) const {
  const auto& row = table_.values[RowOf(i)];
  const std::size_t compact = RemoveBit(s, i);
  if (compact >= row.size() || !row[compact].has_value()) {
    throw MissingCoalitionError(DescribeMissing(table_.d, compact, i));
  }
  return *row[compact];
}

std::vector<double> ExternalMethod::MetagameTable(int i,
                                                  const EngineOptions&) const {
  const auto& row = table_.values[RowOf(i)];
  const std::size_t n = std::size_t{1} << (table_.d - 1);
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (k >= row.size() || !row[k].has_value()) {
      throw MissingCoalitionError(DescribeMissing(table_.d, k, i));
    }
    out[k] = *row[k];
  }
  return out;
}

MetaGameOracle::MetaGameOracle(MethodPtr method, int target)
    : ValueOracle(method ? method->d() - 1 : 0),
      method_(std::move(method)),
      target_(target) {
  if (target < 0 || target >= method_->d()) {
    throw std::invalid_argument("metagame target out of range");
  }
}

double MetaGameOracle::Value(std::uint64_t bits) const {
  const std::uint64_t s = InsertZeroBit(bits, target_) | (std::uint64_t{1} << target_);
  return method_->Restricted(Coalition(s, method_->d()), target_);
}

DirectionalMatrix MetaAttributionExact(const AttributionMethod& method,
                                       const EngineOptions& options) {
  const int d = method.d();
  RequireExact(d, options);

  DirectionalMatrix dm;
  dm.d = d;
  dm.base = method.tag();
  dm.targets.resize(d);
  for (int i = 0; i < d; ++i) dm.targets[i] = i;
  dm.entries.assign(static_cast<std::size_t>(d) * d, 0.0);
  dm.first_order.assign(d, 0.0);

  // Targets are independent; each writes only its own row.
  EngineOptions inner = options;
  if (options.threads > 1 && d > 1) inner.threads = 1;
  ParallelFor(d, options.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      const int i = static_cast<int>(t);
      double* row = dm.entries.data() + t * d;
      row[i] = method.Restricted(Coalition::Empty(d).with(i), i);
      dm.first_order[i] = method.Restricted(Coalition::Full(d), i);
      if (d == 1) continue;
      const std::vector<double> nu = method.MetagameTable(i, inner);
      const std::vector<double> sources = ShapleyFromTable(d - 1, nu);
      for (int p = 0; p < d - 1; ++p) {
        row[MetaGameOracle::PlayerToSource(p, i)] = sources[p];
      }
    }
  });
  return dm;
}

std::vector<double> CheckHierarchicalEfficiency(const DirectionalMatrix& dm) {
  std::vector<double> residual(dm.rows());
  for (std::size_t r = 0; r < dm.rows(); ++r) {
    double sum = 0.0;
    for (int j = 0; j < dm.d; ++j) sum += dm.at(r, j);
    residual[r] = std::abs(sum - dm.first_order[r]);
  }
  return residual;
}

PairIndex Symmetrize(const DirectionalMatrix& dm) {
  if (!dm.complete()) {
    throw std::invalid_argument("symmetrization needs every target row");
  }
  const PairTag tag = dm.base == MethodTag::kShapley ? PairTag::kStii
                      : dm.base == MethodTag::kIntegratedGradients
                          ? PairTag::kSop
                          : PairTag::kSymmetrizedMeta;
  PairIndex out(dm.d, tag);
  for (int i = 0; i < dm.d; ++i) {
    out.set_single(i, dm.entry(i, i));
    for (int j = i + 1; j < dm.d; ++j) {
      out.set_pair(i, j, dm.entry(i, j) + dm.entry(j, i));
    }
  }
  return out;
}

double MetaPairInteraction(const AttributionMethod& method, int target, int j,
                           int k, const EngineOptions& options) {
  const int d = method.d();
  RequireExact(d, options);
  if (target < 0 || target >= d || j < 0 || j >= d || k < 0 || k >= d) {
    throw std::invalid_argument("player index out of range");
  }
  if (j == target || k == target || j == k) {
    throw std::invalid_argument(
        "pair members must be distinct and differ from the target");
  }
  const std::vector<double> nu = method.MetagameTable(target, options);
  const PairIndex stii = StiiFromTable(d - 1, nu);
  return stii.pair(MetaGameOracle::SourceToPlayer(j, target),
                   MetaGameOracle::SourceToPlayer(k, target));
}

}  // namespace metagame
