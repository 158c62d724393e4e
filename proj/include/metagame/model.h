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

#ifndef METAGAME_MODEL_H_
#define METAGAME_MODEL_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "metagame/coalition.h"
#include "metagame/game.h"

namespace metagame {

enum class Differentiability {
  kNone,              // value only
  kFiniteDifference,  // opaque callable; derivatives by central differences
  kExact,             // analytic first and second derivatives
};

// A predictor f: R^d -> R. Implementations are immutable and thread-safe.
class Model {
 public:
  virtual ~Model() = default;

  virtual int dim() const = 0;
  virtual double Value(std::span<const double> x) const = 0;
  virtual Differentiability differentiability() const = 0;

  // df/dx_i. The default uses central differences with
  // h = 1e-5 * max(1, |x_i|). Throws UnsupportedError for kNone.
  virtual double Partial(std::span<const double> x, int i) const;
  // Full gradient; the default calls Partial per coordinate.
  virtual void Gradient(std::span<const double> x, std::span<double> grad) const;
  // Row-major d x d Hessian. Only kExact models provide one; the default
  // throws UnsupportedError.
  virtual void Hessian(std::span<const double> x,
                       std::span<double> hessian) const;

 protected:
  void CheckDifferentiable() const;
};

using ModelPtr = std::shared_ptr<const Model>;

// Wraps an opaque callable. Derivatives come from finite differences unless
// the callable is declared non-differentiable.
class CallableModel final : public Model {
 public:
  using Fn = std::function<double(std::span<const double>)>;
  CallableModel(int d, Fn fn, bool differentiable = true);

  int dim() const override { return d_; }
  double Value(std::span<const double> x) const override { return fn_(x); }
  Differentiability differentiability() const override {
    return differentiable_ ? Differentiability::kFiniteDifference
                           : Differentiability::kNone;
  }

 private:
  int d_;
  Fn fn_;
  bool differentiable_;
};

// A model evaluated at input x with absent features imputed from baseline b:
// v(S) = f(x_S, b_{complement of S}).
class MaskedModel {
 public:
  // Throws std::invalid_argument on dimension mismatch or null model.
  MaskedModel(ModelPtr model, std::vector<double> x, std::vector<double> baseline);

  int d() const { return static_cast<int>(x_.size()); }
  const Model& model() const { return *model_; }
  const ModelPtr& model_ptr() const { return model_; }
  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& baseline() const { return baseline_; }

  // The imputed input (x_S, b_rest).
  std::vector<double> Point(const Coalition& s) const;
  void PointInto(std::uint64_t bits, std::span<double> out) const;

  // Throws std::invalid_argument if s.d() != d().
  double Evaluate(const Coalition& s) const;

 private:
  ModelPtr model_;
  std::vector<double> x_;
  std::vector<double> baseline_;
};

// model(x_S, b_rest).
double EvaluateMasked(const MaskedModel& masked, const Coalition& s);

// The masked model as a cooperative game.
class MaskedGame final : public ValueOracle {
 public:
  explicit MaskedGame(MaskedModel masked);
  const MaskedModel& masked() const { return masked_; }

 protected:
  double Value(std::uint64_t bits) const override;

 private:
  MaskedModel masked_;
};

}  // namespace metagame

#endif  // METAGAME_MODEL_H_
