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

#ifndef METAGAME_VERIFY_H_
#define METAGAME_VERIFY_H_

#include <cstdint>
#include <string>
#include <vector>

namespace metagame {

struct VerifyOptions {
  std::uint64_t seed = 0;
  // Instances per invariant.
  int instances = 20;
  // Runs the sweep with a corrupted Shapley weight (see
  // testing::ScopedShapleyWeightFault); the suite is expected to fail.
  bool inject_shapley_fault = false;
  int threads = 1;
};

struct InvariantResult {
  std::string name;
  double tolerance = 0.0;
  int instances = 0;
  double worst_residual = 0.0;
  bool passed = true;
  // Seed and parameters of the first instance over tolerance.
  std::string failing_instance;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::vector<InvariantResult> invariants;
  bool passed() const;
};

// Seeded sweep over random polynomial models and Moebius games checking the
// identities the engines rely on. Deterministic for a fixed seed.
VerifyReport RunVerification(const VerifyOptions& options);

}  // namespace metagame

#endif  // METAGAME_VERIFY_H_
