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

#ifndef METAGAME_DUAL_H_
#define METAGAME_DUAL_H_

namespace metagame {

// Forward-mode dual number value + eps * grad with eps^2 = 0. Nesting
// (Dual<Dual<double>>) yields exact mixed second derivatives.
template <typename T>
struct Dual {
  T value{};
  T grad{};

  constexpr Dual() = default;
  constexpr Dual(T v) : value(v) {}  // NOLINT: constants promote implicitly
  constexpr Dual(T v, T g) : value(v), grad(g) {}

  friend constexpr Dual operator+(const Dual& a, const Dual& b) {
    return {a.value + b.value, a.grad + b.grad};
  }
  friend constexpr Dual operator-(const Dual& a, const Dual& b) {
    return {a.value - b.value, a.grad - b.grad};
  }
  friend constexpr Dual operator-(const Dual& a) { return {-a.value, -a.grad}; }
  friend constexpr Dual operator*(const Dual& a, const Dual& b) {
    return {a.value * b.value, a.grad * b.value + a.value * b.grad};
  }
  friend constexpr Dual operator/(const Dual& a, const Dual& b) {
    const T inv = T(1) / b.value;
    return {a.value * inv, (a.grad * b.value - a.value * b.grad) * inv * inv};
  }
  constexpr Dual& operator+=(const Dual& b) { return *this = *this + b; }
  constexpr Dual& operator-=(const Dual& b) { return *this = *this - b; }
  constexpr Dual& operator*=(const Dual& b) { return *this = *this * b; }
};

// Integer power by repeated squaring; valid for any arithmetic-like T.
template <typename T>
constexpr T IntPow(T base, int exponent) {
  T result(1.0);
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    base = base * base;
    exponent >>= 1;
  }
  return result;
}

}  // namespace metagame

#endif  // METAGAME_DUAL_H_
