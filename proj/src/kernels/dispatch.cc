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

#include <atomic>
#include <bit>
#include <stdexcept>
#include <string>

#include "kernels/kernels_internal.h"
#include "metagame/kernels.h"

namespace metagame::kernels {
namespace {

bool CpuHas(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return true;
    case Backend::kAvx2:
#if defined(METAGAME_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Backend::kNeon:
#if defined(METAGAME_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

std::atomic<Backend>& ActiveSlot() {
  static std::atomic<Backend> slot{BestBackend()};
  return slot;
}

const internal::KernelTable& TableFor(Backend backend) {
  switch (backend) {
#if defined(METAGAME_HAVE_AVX2)
    case Backend::kAvx2:
      return internal::Avx2Kernels();
#endif
#if defined(METAGAME_HAVE_NEON)
    case Backend::kNeon:
      return internal::NeonKernels();
#endif
    default:
      return internal::ScalarKernels();
  }
}

void CheckTable(std::size_t n) {
  if (n == 0 || !std::has_single_bit(n)) {
    throw std::invalid_argument("set-function table length " +
                                std::to_string(n) + " is not a power of two");
  }
}

void CheckBit(std::size_t n, int bit) {
  if (bit < 0 || (std::size_t{1} << bit) >= n) {
    throw std::invalid_argument("bit " + std::to_string(bit) +
                                " outside table of length " +
                                std::to_string(n));
  }
}

}  // namespace

std::string_view BackendName(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return "scalar";
    case Backend::kAvx2:
      return "avx2";
    case Backend::kNeon:
      return "neon";
  }
  return "unknown";
}

std::vector<Backend> AvailableBackends() {
  std::vector<Backend> out;
  for (Backend b : {Backend::kScalar, Backend::kAvx2, Backend::kNeon}) {
    if (CpuHas(b)) out.push_back(b);
  }
  return out;
}

Backend BestBackend() { return AvailableBackends().back(); }

Backend ActiveBackend() { return ActiveSlot().load(std::memory_order_relaxed); }

void SetActiveBackend(Backend backend) {
  if (!CpuHas(backend)) {
    throw std::invalid_argument("kernel backend " +
                                std::string(BackendName(backend)) +
                                " is not available on this CPU");
  }
  ActiveSlot().store(backend, std::memory_order_relaxed);
}

ScopedBackend::ScopedBackend(Backend backend) : previous_(ActiveBackend()) {
  SetActiveBackend(backend);
}

ScopedBackend::~ScopedBackend() { SetActiveBackend(previous_); }

void MobiusInPlace(Backend backend, std::span<double> table) {
  CheckTable(table.size());
  TableFor(backend).mobius(table.data(), table.size());
}

void ZetaInPlace(Backend backend, std::span<double> table) {
  CheckTable(table.size());
  TableFor(backend).zeta(table.data(), table.size());
}

double MarginalDot(Backend backend, std::span<const double> table,
                   std::span<const double> weights, int bit) {
  CheckTable(table.size());
  CheckBit(table.size(), bit);
  if (weights.size() != table.size()) {
    throw std::invalid_argument("weight table length mismatch");
  }
  return TableFor(backend).marginal_dot(table.data(), weights.data(),
                                        table.size(), bit);
}

void BitDerivative(Backend backend, std::span<const double> table, int bit,
                   std::span<double> out) {
  CheckTable(table.size());
  CheckBit(table.size(), bit);
  if (out.size() != table.size() / 2) {
    throw std::invalid_argument("output length must be half the table");
  }
  TableFor(backend).bit_derivative(table.data(), table.size(), bit, out.data());
}

void BitSlice(Backend backend, std::span<const double> table, int bit,
              std::span<double> out) {
  CheckTable(table.size());
  CheckBit(table.size(), bit);
  if (out.size() != table.size() / 2) {
    throw std::invalid_argument("output length must be half the table");
  }
  TableFor(backend).bit_slice(table.data(), table.size(), bit, out.data());
}

void MobiusInPlace(std::span<double> table) {
  MobiusInPlace(ActiveBackend(), table);
}
void ZetaInPlace(std::span<double> table) {
  ZetaInPlace(ActiveBackend(), table);
}
double MarginalDot(std::span<const double> table,
                   std::span<const double> weights, int bit) {
  return MarginalDot(ActiveBackend(), table, weights, bit);
}
void BitDerivative(std::span<const double> table, int bit,
                   std::span<double> out) {
  BitDerivative(ActiveBackend(), table, bit, out);
}
void BitSlice(std::span<const double> table, int bit, std::span<double> out) {
  BitSlice(ActiveBackend(), table, bit, out);
}

}  // namespace metagame::kernels
