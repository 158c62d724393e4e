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

#ifndef METAGAME_ATTRIBUTION_H_
#define METAGAME_ATTRIBUTION_H_

#include <string>
#include <string_view>
#include <vector>

namespace metagame {

enum class MethodTag {
  kShapley,
  kGradientTimesInput,
  kIntegratedGradients,
  kExternal,
};

// "sv", "gxi", "ig", "external".
std::string_view MethodTagName(MethodTag tag);

// First-order attribution phi in R^d.
struct AttributionVector {
  std::vector<double> values;
  MethodTag method = MethodTag::kShapley;
  // Input point the attribution explains; empty for abstract games.
  std::vector<double> input;

  int d() const { return static_cast<int>(values.size()); }
  double operator[](int i) const { return values[i]; }
};

}  // namespace metagame

#endif  // METAGAME_ATTRIBUTION_H_
