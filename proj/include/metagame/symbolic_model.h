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

#ifndef METAGAME_SYMBOLIC_MODEL_H_
#define METAGAME_SYMBOLIC_MODEL_H_

#include <span>
#include <vector>

#include "metagame/dual.h"
#include "metagame/model.h"
#include "metagame/mobius.h"

namespace metagame {

// c * prod_k x_k^{exponents[k]}.
struct Monomial {
  double coefficient = 0.0;
  std::vector<int> exponents;
};

// Sparse polynomial f(x) = sum of monomials. Derivatives are exact: first
// derivatives via Dual<double>, second via Dual<Dual<double>>.
class SymbolicModel final : public Model {
 public:
  // Throws std::invalid_argument on negative exponents or wrong lengths.
  SymbolicModel(int d, std::vector<Monomial> terms);

  int dim() const override { return d_; }
  const std::vector<Monomial>& terms() const { return terms_; }

  double Value(std::span<const double> x) const override;
  Differentiability differentiability() const override {
    return Differentiability::kExact;
  }
  double Partial(std::span<const double> x, int i) const override;
  void Gradient(std::span<const double> x, std::span<double> grad) const override;
  void Hessian(std::span<const double> x,
               std::span<double> hessian) const override;

  // Generic evaluation over any dual-like scalar type.
  template <typename T>
  T Eval(std::span<const T> x) const {
    T sum(0.0);
    for (std::size_t t = 0; t < terms_.size(); ++t) {
      T term(terms_[t].coefficient);
      for (int k : supports_[t]) term = term * IntPow(x[k], terms_[t].exponents[k]);
      sum = sum + term;
    }
    return sum;
  }

  // Moebius expansion of the masked game at baseline 0: the coefficient of S
  // is the summed value of the monomials whose support is exactly S. Throws
  // std::invalid_argument for a nonzero baseline.
  MobiusExpansion MobiusAtZeroBaseline(std::span<const double> x,
                                       std::span<const double> baseline) const;

 private:
  int d_;
  std::vector<Monomial> terms_;
  std::vector<std::vector<int>> supports_;
};

}  // namespace metagame

#endif  // METAGAME_SYMBOLIC_MODEL_H_
