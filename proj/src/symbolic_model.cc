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

#include "metagame/symbolic_model.h"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace metagame {
namespace {

using Dual1 = Dual<double>;
using Dual2 = Dual<Dual<double>>;

// One monomial seeded along coordinate `seed`.
double MonomialPartial(const Monomial& m, const std::vector<int>& support,
                       std::span<const double> x, int seed) {
  Dual1 term(m.coefficient);
  for (int k : support) {
    term = term * IntPow(Dual1(x[k], k == seed ? 1.0 : 0.0), m.exponents[k]);
  }
  return term.grad;
}

// d^2 m / dx_a dx_b through nested duals.
double MonomialSecond(const Monomial& m, const std::vector<int>& support,
                      std::span<const double> x, int a, int b) {
  Dual2 term(m.coefficient);
  for (int k : support) {
    const Dual2 xk(Dual1(x[k], k == b ? 1.0 : 0.0),
                   Dual1(k == a ? 1.0 : 0.0, 0.0));
    term = term * IntPow(xk, m.exponents[k]);
  }
  return term.grad.grad;
}

}  // namespace

SymbolicModel::SymbolicModel(int d, std::vector<Monomial> terms)
    : d_(d), terms_(std::move(terms)) {
  if (d < 1 || d > kMaxPlayers) {
    throw std::invalid_argument("model dimension must be in [1, 63]");
  }
  supports_.reserve(terms_.size());
  for (const Monomial& m : terms_) {
    if (static_cast<int>(m.exponents.size()) != d) {
      throw std::invalid_argument("monomial has " +
                                  std::to_string(m.exponents.size()) +
                                  " exponents, expected " + std::to_string(d));
    }
    std::vector<int> support;
    for (int k = 0; k < d; ++k) {
      if (m.exponents[k] < 0) {
        throw std::invalid_argument("negative exponent in monomial");
      }
      if (m.exponents[k] > 0) support.push_back(k);
    }
    supports_.push_back(std::move(support));
  }
}

double SymbolicModel::Value(std::span<const double> x) const {
  return Eval<double>(x);
}

double SymbolicModel::Partial(std::span<const double> x, int i) const {
  double sum = 0.0;
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    if (terms_[t].exponents[i] == 0) continue;
    sum += MonomialPartial(terms_[t], supports_[t], x, i);
  }
  return sum;
}

void SymbolicModel::Gradient(std::span<const double> x,
                             std::span<double> grad) const {
  std::fill(grad.begin(), grad.begin() + d_, 0.0);
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    for (int k : supports_[t]) {
      grad[k] += MonomialPartial(terms_[t], supports_[t], x, k);
    }
  }
}

void SymbolicModel::Hessian(std::span<const double> x,
                            std::span<double> hessian) const {
  std::fill(hessian.begin(), hessian.begin() + d_ * d_, 0.0);
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    const auto& support = supports_[t];
    for (std::size_t p = 0; p < support.size(); ++p) {
      for (std::size_t q = p; q < support.size(); ++q) {
        const int a = support[p];
        const int b = support[q];
        const double h = MonomialSecond(terms_[t], support, x, a, b);
        hessian[a * d_ + b] += h;
        if (a != b) hessian[b * d_ + a] += h;
      }
    }
  }
}

MobiusExpansion SymbolicModel::MobiusAtZeroBaseline(
    std::span<const double> x, std::span<const double> baseline) const {
  if (std::any_of(baseline.begin(), baseline.end(),
                  [](double b) { return b != 0.0; })) {
    throw std::invalid_argument(
        "monomial-support Moebius shortcut requires a zero baseline");
  }
  MobiusExpansion out(d_);
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    std::uint64_t mask = 0;
    double value = terms_[t].coefficient;
    for (int k : supports_[t]) {
      mask |= std::uint64_t{1} << k;
      value *= IntPow(x[k], terms_[t].exponents[k]);
    }
    out.Add(Coalition(mask, d_), value);
  }
  return out;
}

}  // namespace metagame
