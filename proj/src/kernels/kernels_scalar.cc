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

#include <cstddef>

#include "kernels/kernels_internal.h"

namespace metagame::kernels::internal {
namespace {

void Mobius(double* t, std::size_t n) {
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t base = 0; base < n; base += 2 * h) {
      for (std::size_t k = 0; k < h; ++k) t[base + h + k] -= t[base + k];
    }
  }
}

void Zeta(double* t, std::size_t n) {
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t base = 0; base < n; base += 2 * h) {
      for (std::size_t k = 0; k < h; ++k) t[base + h + k] += t[base + k];
    }
  }
}

double MarginalDot(const double* t, const double* w, std::size_t n, int bit) {
  const std::size_t h = std::size_t{1} << bit;
  double sum = 0.0;
  for (std::size_t base = 0; base < n; base += 2 * h) {
    for (std::size_t k = 0; k < h; ++k) {
      const std::size_t s = base + k;
      sum += w[s] * (t[s + h] - t[s]);
    }
  }
  return sum;
}

void BitDerivative(const double* t, std::size_t n, int bit, double* out) {
  const std::size_t h = std::size_t{1} << bit;
  for (std::size_t base = 0; base < n; base += 2 * h) {
    double* dst = out + base / 2;
    for (std::size_t k = 0; k < h; ++k) dst[k] = t[base + h + k] - t[base + k];
  }
}

void BitSlice(const double* t, std::size_t n, int bit, double* out) {
  const std::size_t h = std::size_t{1} << bit;
  for (std::size_t base = 0; base < n; base += 2 * h) {
    double* dst = out + base / 2;
    for (std::size_t k = 0; k < h; ++k) dst[k] = t[base + h + k];
  }
}

}  // namespace

const KernelTable& ScalarKernels() {
  static constexpr KernelTable kTable{Mobius, Zeta, MarginalDot, BitDerivative,
                                      BitSlice};
  return kTable;
}

}  // namespace metagame::kernels::internal
