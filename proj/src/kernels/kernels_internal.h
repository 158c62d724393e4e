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

#ifndef METAGAME_SRC_KERNELS_KERNELS_INTERNAL_H_
#define METAGAME_SRC_KERNELS_KERNELS_INTERNAL_H_

#include <cstddef>

// Raw-pointer kernel entry points, one set per backend. Lengths are powers of
// two and validated by the dispatcher.

namespace metagame::kernels::internal {

struct KernelTable {
  void (*mobius)(double* t, std::size_t n);
  void (*zeta)(double* t, std::size_t n);
  double (*marginal_dot)(const double* t, const double* w, std::size_t n,
                         int bit);
  void (*bit_derivative)(const double* t, std::size_t n, int bit, double* out);
  void (*bit_slice)(const double* t, std::size_t n, int bit, double* out);
};

const KernelTable& ScalarKernels();
#if defined(METAGAME_HAVE_AVX2)
const KernelTable& Avx2Kernels();
#endif
#if defined(METAGAME_HAVE_NEON)
const KernelTable& NeonKernels();
#endif

}  // namespace metagame::kernels::internal

#endif  // METAGAME_SRC_KERNELS_KERNELS_INTERNAL_H_
