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

#include <arm_neon.h>

#include <cstddef>

#include "kernels/kernels_internal.h"

namespace metagame::kernels::internal {
namespace {

constexpr std::size_t kLanes = 2;

template <bool kSubtract>
void Butterfly(double* t, std::size_t n) {
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t base = 0; base < n; base += 2 * h) {
      double* lo = t + base;
      double* hi = t + base + h;
      std::size_t k = 0;
      for (; k + kLanes <= h; k += kLanes) {
        const float64x2_t a = vld1q_f64(hi + k);
        const float64x2_t b = vld1q_f64(lo + k);
        vst1q_f64(hi + k, kSubtract ? vsubq_f64(a, b) : vaddq_f64(a, b));
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
  float64x2_t acc = vdupq_n_f64(0.0);
  for (std::size_t base = 0; base < n; base += 2 * h) {
    for (std::size_t k = 0; k < h; k += kLanes) {
      const std::size_t s = base + k;
      const float64x2_t diff = vsubq_f64(vld1q_f64(t + s + h), vld1q_f64(t + s));
      // Separate multiply and add: no fused rounding.
      acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(w + s), diff));
    }
  }
  return vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
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
      float64x2_t v = vld1q_f64(hi + k);
      if constexpr (kDerivative) v = vsubq_f64(v, vld1q_f64(lo + k));
      vst1q_f64(dst + k, v);
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

const KernelTable& NeonKernels() {
  static constexpr KernelTable kTable{Mobius, Zeta, MarginalDot, BitDerivative,
                                      BitSlice};
  return kTable;
}

}  // namespace metagame::kernels::internal
