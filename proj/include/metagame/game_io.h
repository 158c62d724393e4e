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

#ifndef METAGAME_GAME_IO_H_
#define METAGAME_GAME_IO_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "metagame/game.h"
#include "metagame/meta.h"
#include "metagame/mobius.h"
#include "metagame/symbolic_model.h"

namespace metagame {

enum class GameKind { kDenseGame, kMobius, kAttributionTable };

// "dense_game", "mobius", "attribution_table".
std::string_view GameKindName(GameKind kind);

// A polynomial model stored next to its enumerated game so the document can
// be turned back into a model.
struct ModelBlock {
  std::vector<Monomial> monomials;
  std::vector<double> x;
  std::vector<double> baseline;
};

// In-memory form of a game file. Exactly one payload matches `kind`.
struct GameDocument {
  GameKind kind = GameKind::kDenseGame;
  int d = 0;
  std::vector<double> values;               // dense_game, length 2^d
  std::optional<MobiusExpansion> mobius;    // mobius
  std::optional<ExternalAttributionTable> attribution;  // attribution_table
  std::optional<ModelBlock> model;          // optional for dense_game

  // The game the document describes. Throws std::invalid_argument for
  // attribution tables, which describe a method rather than a game.
  OraclePtr Game() const;
};

// Throws ParseError whose where() is "byte N" for syntax errors and a JSON
// pointer (e.g. "/values/3") for schema errors.
GameDocument ParseGameDocument(std::string_view text);

// As ParseGameDocument, prefixing the location with the path. A missing file
// is a ParseError as well.
GameDocument ReadGameFile(const std::string& path);

// Numbers are written in shortest round-trip form.
std::string WriteGameDocument(const GameDocument& doc, bool pretty = false);

// Dense document for a model masked at x against baseline, with the model
// block filled in. Throws CapacityError above the exact-engine limit.
GameDocument DenseDocumentFromModel(std::shared_ptr<const SymbolicModel> model,
                                    std::vector<double> x,
                                    std::vector<double> baseline,
                                    const EngineOptions& options = {});

}  // namespace metagame

#endif  // METAGAME_GAME_IO_H_
