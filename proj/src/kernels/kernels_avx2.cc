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

// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include <cstddef>

#include "kernels/kernels_internal.h"

namespace metagame::kernels::internal {
namespace {

constexpr std::size_t kLanes = 4;

template <bool kSubtract>
void Butterfly(double* t, std::size_t n) {
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t base = 0; base < n; base += 2 * h) {
      double* lo = t + base;
      double* hi = t + base + h;
      std::size_t k = 0;
      for (; k + kLanes <= h; k += kLanes) {
        const __m256d a = _mm256_loadu_pd(hi + k);
        const __m256d b = _mm256_loadu_pd(lo + k);
        _mm256_storeu_pd(hi + k,
                         kSubtract ? _mm256_sub_pd(a, b) : _mm256_add_pd(a, b));
      }
      for (; k < h; ++k) {
        if constexpr (kSubtract) {
          hi[k] -= lo[k];
        } else {
          hi[k] += lo[k];
        }
      }
    }
  }
}

void Mobius(double* t, std::size_t n) { Butterfly<true>(t, n); }
void Zeta(double* t, std::size_t n) { Butterfly<false>(t, n); }

double MarginalDot(const double* t, const double* w, std::size_t n, int bit) {
  const std::size_t h = std::size_t{1} << bit;
  if (h < kLanes) return ScalarKernels().marginal_dot(t, w, n, bit);
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t base = 0; base < n; base += 2 * h) {
    for (std::size_t k = 0; k < h; k += kLanes) {
      const std::size_t s = base + k;
      const __m256d diff =
          _mm256_sub_pd(_mm256_loadu_pd(t + s + h), _mm256_loadu_pd(t + s));
      acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(w + s), diff));
    }
  }
  alignas(32) double lanes[kLanes];
  _mm256_store_pd(lanes, acc);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

template <bool kDerivative>
void Slice(const double* t, std::size_t n, int bit, double* out) {
  const std::size_t h = std::size_t{1} << bit;
  for (std::size_t base = 0; base < n; base += 2 * h) {
    const double* lo = t + base;
    const double* hi = t + base + h;
    double* dst = out + base / 2;
    std::size_t k = 0;
    for (; k + kLanes <= h; k += kLanes) {
      __m256d v = _mm256_loadu_pd(hi + k);
      if constexpr (kDerivative) v = _mm256_sub_pd(v, _mm256_loadu_pd(lo + k));
      _mm256_storeu_pd(dst + k, v);
    }
    for (; k < h; ++k) dst[k] = kDerivative ? hi[k] - lo[k] : hi[k];
  }
}

void BitDerivative(const double* t, std::size_t n, int bit, double* out) {
  Slice<true>(t, n, bit, out);
}

void BitSlice(const double* t, std::size_t n, int bit, double* out) {
  Slice<false>(t, n, bit, out);
}

}  // namespace

const KernelTable& Avx2Kernels() {
  static constexpr KernelTable kTable{Mobius, Zeta, MarginalDot, BitDerivative,
                                      BitSlice};
  return kTable;
}

}  // namespace metagame::kernels::internal
