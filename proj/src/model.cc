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

#include "metagame/model.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "metagame/errors.h"

namespace metagame {

void Model::CheckDifferentiable() const {
  if (differentiability() == Differentiability::kNone) {
    throw UnsupportedError("model is not differentiable");
  }
}

double Model::Partial(std::span<const double> x, int i) const {
  CheckDifferentiable();
  const double h = 1e-5 * std::max(1.0, std::abs(x[i]));
  std::vector<double> probe(x.begin(), x.end());
  probe[i] = x[i] + h;
  const double up = Value(probe);
  probe[i] = x[i] - h;
  const double down = Value(probe);
  return (up - down) / (2.0 * h);
}

void Model::Gradient(std::span<const double> x, std::span<double> grad) const {
  for (int i = 0; i < dim(); ++i) grad[i] = Partial(x, i);
}

void Model::Hessian(std::span<const double>, std::span<double>) const {
  throw UnsupportedError("model provides no exact second derivatives");
}

CallableModel::CallableModel(int d, Fn fn, bool differentiable)
    : d_(d), fn_(std::move(fn)), differentiable_(differentiable) {
  if (d < 1 || d > kMaxPlayers) {
    throw std::invalid_argument("model dimension must be in [1, 63]");
  }
  if (!fn_) throw std::invalid_argument("empty model callable");
}

MaskedModel::MaskedModel(ModelPtr model, std::vector<double> x,
                         std::vector<double> baseline)
    : model_(std::move(model)), x_(std::move(x)), baseline_(std::move(baseline)) {
  if (!model_) throw std::invalid_argument("null model");
  if (static_cast<int>(x_.size()) != model_->dim() ||
      baseline_.size() != x_.size()) {
    throw std::invalid_argument(
        "dimension mismatch: model has " + std::to_string(model_->dim()) +
        " inputs, x has " + std::to_string(x_.size()) + ", baseline has " +
        std::to_string(baseline_.size()));
  }
}

void MaskedModel::PointInto(std::uint64_t bits, std::span<double> out) const {
  for (int k = 0; k < d(); ++k) {
    out[k] = ((bits >> k) & 1u) ? x_[k] : baseline_[k];
  }
}

std::vector<double> MaskedModel::Point(const Coalition& s) const {
  if (s.d() != d()) {
    throw std::invalid_argument("coalition dimension " + std::to_string(s.d()) +
                                " does not match model dimension " +
                                std::to_string(d()));
  }
  std::vector<double> out(x_.size());
  PointInto(s.bits(), out);
  return out;
}

double MaskedModel::Evaluate(const Coalition& s) const {
  return model_->Value(Point(s));
}

double EvaluateMasked(const MaskedModel& masked, const Coalition& s) {
  return masked.Evaluate(s);
}

MaskedGame::MaskedGame(MaskedModel masked)
    : ValueOracle(masked.d()), masked_(std::move(masked)) {}

double MaskedGame::Value(std::uint64_t bits) const {
  return masked_.Evaluate(Coalition(bits, d()));
}

}  // namespace metagame
