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

#ifndef METAGAME_KERNELS_H_
#define METAGAME_KERNELS_H_

#include <span>
#include <string_view>
#include <vector>

// Dense set-function kernels. A table of length 2^n holds one value per
// coalition of n players, indexed by bit pattern. Every kernel has a scalar
// reference implementation and SIMD variants selected at runtime.
//
// The butterfly kernels (Moebius, zeta, bit slicing) perform the same
// floating-point operation per element in every variant, so results are
// bit-identical across backends. MarginalDot is a reduction: the scalar
// backend sums in ascending coalition order, SIMD backends in a fixed
// lane-striped order. Each backend is deterministic on its own.

namespace metagame::kernels {

enum class Backend { kScalar, kAvx2, kNeon };

std::string_view BackendName(Backend backend);

// Backends usable on this CPU, scalar first.
std::vector<Backend> AvailableBackends();
// Widest available backend.
Backend BestBackend();
// Backend used by the dispatching entry points below.
Backend ActiveBackend();
// Throws std::invalid_argument if the backend is not available here.
void SetActiveBackend(Backend backend);

// Restores the previous backend on destruction.
class ScopedBackend {
 public:
  explicit ScopedBackend(Backend backend);
  ~ScopedBackend();
  ScopedBackend(const ScopedBackend&) = delete;
  ScopedBackend& operator=(const ScopedBackend&) = delete;

 private:
  Backend previous_;
};

// In place: t[S] <- sum_{T subset S} (-1)^{|S|-|T|} t[T].
void MobiusInPlace(std::span<double> table);
// In place: t[S] <- sum_{T subset S} t[T].
void ZetaInPlace(std::span<double> table);

// sum over S without `bit` of weights[S] * (table[S | bit] - table[S]).
// `weights` has the same length as `table`.
double MarginalDot(std::span<const double> table,
                   std::span<const double> weights, int bit);

// out[RemoveBit(S)] = table[S | bit] - table[S] for S without `bit`.
void BitDerivative(std::span<const double> table, int bit,
                   std::span<double> out);

// out[RemoveBit(S)] = table[S | bit] for S without `bit`.
void BitSlice(std::span<const double> table, int bit, std::span<double> out);

// Explicit-backend entry points for equivalence testing.
void MobiusInPlace(Backend backend, std::span<double> table);
void ZetaInPlace(Backend backend, std::span<double> table);
double MarginalDot(Backend backend, std::span<const double> table,
                   std::span<const double> weights, int bit);
void BitDerivative(Backend backend, std::span<const double> table, int bit,
                   std::span<double> out);
void BitSlice(Backend backend, std::span<const double> table, int bit,
              std::span<double> out);

}  // namespace metagame::kernels

#endif  // METAGAME_KERNELS_H_
