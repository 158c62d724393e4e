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

#ifndef METAGAME_TOOLS_INPUTS_H_
#define METAGAME_TOOLS_INPUTS_H_

#include <optional>
#include <string>
#include <vector>

#include "metagame/game.h"
#include "metagame/meta.h"
#include "metagame/model.h"
#include "metagame/symbolic_model.h"

namespace metagame::cli {

struct InputFlags {
  std::string model;     // builtin model spec
  std::string game;      // game file path
  std::string x;         // comma list
  std::string baseline;  // comma list
};

// What a run operates on. `game` is null for attribution tables; `masked` is
// set for differentiable models.
struct ResolvedInput {
  int d = 0;
  std::string source;
  OraclePtr game;
  std::shared_ptr<const SymbolicModel> model;
  std::optional<MaskedModel> masked;
  std::optional<ExternalAttributionTable> table;
};

// Model specs: table1 | poly:D:ORDER:TERMS:SEED | mobius:D:SPARSITY:SEED |
// additive:C0,C1,... Without --x, table1 uses (2, 3) and poly draws a point
// from its seed; the baseline defaults to zeros. Throws ParseError.
ResolvedInput ResolveInput(const InputFlags& flags);

std::vector<double> ParseDoubleList(const std::string& text, const std::string& flag);
std::vector<int> ParseIntList(const std::string& text, const std::string& flag);
std::string JoinDoubles(const std::vector<double>& values);
std::string JoinInts(const std::vector<int>& values);

}  // namespace metagame::cli

#endif  // METAGAME_TOOLS_INPUTS_H_
