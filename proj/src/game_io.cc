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

#include "metagame/game_io.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"
#include "metagame/errors.h"

namespace metagame {
namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void Fail(const std::string& where, const std::string& what) {
  throw ParseError(where.empty() ? "/" : where, what);
}

const Json& Field(const Json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) Fail(path, std::string("missing field '") + key + "'");
  return *it;
}

double Number(const Json& j, const std::string& path) {
  if (!j.is_number()) Fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) Fail(path, "number is not finite");
  return v;
}

std::int64_t Integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) Fail(path, "expected an integer");
  return j.get<std::int64_t>();
}

const Json& Array(const Json& j, const std::string& path) {
  if (!j.is_array()) Fail(path, "expected an array");
  return j;
}

std::vector<double> Numbers(const Json& j, const std::string& path) {
  Array(j, path);
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) {
    out.push_back(Number(j[k], path + "/" + std::to_string(k)));
  }
  return out;
}

int Player(const Json& j, const std::string& path, int d) {
  const auto p = Integer(j, path);
  if (p < 0 || p >= d) {
    Fail(path, "player " + std::to_string(p) + " outside [0, " + std::to_string(d) + ")");
  }
  return static_cast<int>(p);
}

std::optional<ModelBlock> ParseModelBlock(const Json& root, int d) {
  if (!root.contains("monomials")) return std::nullopt;
  ModelBlock block;
  const Json& monomials = Array(root["monomials"], "/monomials");
  for (std::size_t t = 0; t < monomials.size(); ++t) {
    const std::string path = "/monomials/" + std::to_string(t);
    const Json& m = monomials[t];
    if (!m.is_object()) Fail(path, "expected an object");
    Monomial mono;
    mono.coefficient = Number(Field(m, path, "coefficient"), path + "/coefficient");
    const Json& exps = Array(Field(m, path, "exponents"), path + "/exponents");
    if (static_cast<int>(exps.size()) != d) {
      Fail(path + "/exponents", "expected " + std::to_string(d) + " exponents");
    }
    for (std::size_t k = 0; k < exps.size(); ++k) {
      const auto e = Integer(exps[k], path + "/exponents/" + std::to_string(k));
      if (e < 0 || e > 64) Fail(path + "/exponents/" + std::to_string(k), "exponent out of range");
      mono.exponents.push_back(static_cast<int>(e));
    }
    block.monomials.push_back(std::move(mono));
  }
  block.x = Numbers(Field(root, "", "x"), "/x");
  block.baseline = Numbers(Field(root, "", "baseline"), "/baseline");
  if (static_cast<int>(block.x.size()) != d) Fail("/x", "expected length d");
  if (static_cast<int>(block.baseline.size()) != d) Fail("/baseline", "expected length d");
  return block;
}

GameDocument ParseDense(const Json& root, int d) {
  if (d > 30) Fail("/d", "dense games support at most 30 players");
  GameDocument doc;
  doc.kind = GameKind::kDenseGame;
  doc.d = d;
  const Json& values = Array(Field(root, "", "values"), "/values");
  const std::size_t expected = std::size_t{1} << d;
  if (values.size() != expected) {
    Fail("/values", "expected " + std::to_string(expected) + " values, got " +
                        std::to_string(values.size()));
  }
  doc.values = Numbers(values, "/values");
  doc.model = ParseModelBlock(root, d);
  return doc;
}

GameDocument ParseMobius(const Json& root, int d) {
  GameDocument doc;
  doc.kind = GameKind::kMobius;
  doc.d = d;
  MobiusExpansion expansion(d);
  const Json& terms = Array(Field(root, "", "terms"), "/terms");
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const std::string path = "/terms/" + std::to_string(t);
    const Json& term = terms[t];
    if (!term.is_array() || term.size() != 2) {
      Fail(path, "expected [players, coefficient]");
    }
    const Json& players = Array(term[0], path + "/0");
    std::uint64_t bits = 0;
    for (std::size_t k = 0; k < players.size(); ++k) {
      const int p = Player(players[k], path + "/0/" + std::to_string(k), d);
      const std::uint64_t bit = std::uint64_t{1} << p;
      if (bits & bit) Fail(path + "/0/" + std::to_string(k), "duplicate player");
      bits |= bit;
    }
    expansion.Add(Coalition(bits, d), Number(term[1], path + "/1"));
  }
  doc.mobius = std::move(expansion);
  return doc;
}

GameDocument ParseAttributionTable(const Json& root, int d) {
  if (d > 30) Fail("/d", "attribution tables support at most 30 players");
  GameDocument doc;
  doc.kind = GameKind::kAttributionTable;
  doc.d = d;
  ExternalAttributionTable table;
  table.d = d;
  const Json& targets = Array(Field(root, "", "targets"), "/targets");
  for (std::size_t r = 0; r < targets.size(); ++r) {
    table.targets.push_back(Player(targets[r], "/targets/" + std::to_string(r), d));
  }
  const Json& values = Array(Field(root, "", "values"), "/values");
  if (values.size() != targets.size()) {
    Fail("/values", "expected one array per target");
  }
  const std::size_t width = std::size_t{1} << (d - 1);
  for (std::size_t r = 0; r < values.size(); ++r) {
    const std::string path = "/values/" + std::to_string(r);
    const Json& row = Array(values[r], path);
    if (row.size() != width) {
      Fail(path, "expected " + std::to_string(width) + " entries, got " +
                     std::to_string(row.size()));
    }
    std::vector<std::optional<double>> parsed;
    parsed.reserve(width);
    for (std::size_t k = 0; k < width; ++k) {
      if (row[k].is_null()) {
        parsed.emplace_back();
      } else {
        parsed.emplace_back(Number(row[k], path + "/" + std::to_string(k)));
      }
    }
    table.values.push_back(std::move(parsed));
  }
  try {
    table.Validate();
  } catch (const std::invalid_argument& e) {
    Fail("/targets", e.what());
  }
  doc.attribution = std::move(table);
  return doc;
}

Json MonomialsJson(const std::vector<Monomial>& monomials) {
  Json out = Json::array();
  for (const Monomial& m : monomials) {
    out.push_back({{"coefficient", m.coefficient}, {"exponents", m.exponents}});
  }
  return out;
}

}  // namespace

std::string_view GameKindName(GameKind kind) {
  switch (kind) {
    case GameKind::kDenseGame:
      return "dense_game";
    case GameKind::kMobius:
      return "mobius";
    case GameKind::kAttributionTable:
      return "attribution_table";
  }
  return "unknown";
}

OraclePtr GameDocument::Game() const {
  switch (kind) {
    case GameKind::kDenseGame:
      return std::make_shared<const TableGame>(d, values);
    case GameKind::kMobius:
      return std::make_shared<const MobiusGame>(*mobius);
    case GameKind::kAttributionTable:
      break;
  }
  throw std::invalid_argument(
      "an attribution_table document describes attributions, not a game");
}

GameDocument ParseGameDocument(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), "malformed document");
  }
  if (!root.is_object()) Fail("", "expected an object");
  const Json& kind_json = Field(root, "", "kind");
  if (!kind_json.is_string()) Fail("/kind", "expected a string");
  const auto d64 = Integer(Field(root, "", "d"), "/d");
  if (d64 < 1 || d64 > kMaxPlayers) {
    Fail("/d", "player count must lie in [1, " + std::to_string(kMaxPlayers) + "]");
  }
  const int d = static_cast<int>(d64);
  const std::string kind = kind_json.get<std::string>();
  if (kind == "dense_game") return ParseDense(root, d);
  if (kind == "mobius") return ParseMobius(root, d);
  if (kind == "attribution_table") return ParseAttributionTable(root, d);
  Fail("/kind", "unknown kind '" + kind +
                    "' (expected dense_game, mobius or attribution_table)");
}

GameDocument ReadGameFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, "cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return ParseGameDocument(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ":" + e.where(),
                     std::string(e.what()).substr(e.where().size() + 2));
  }
}

std::string WriteGameDocument(const GameDocument& doc, bool pretty) {
  Json root;
  root["kind"] = std::string(GameKindName(doc.kind));
  root["d"] = doc.d;
  switch (doc.kind) {
    case GameKind::kDenseGame:
      root["values"] = doc.values;
      if (doc.model) {
        root["monomials"] = MonomialsJson(doc.model->monomials);
        root["x"] = doc.model->x;
        root["baseline"] = doc.model->baseline;
      }
      break;
    case GameKind::kMobius: {
      Json terms = Json::array();
      for (const auto& [bits, value] : doc.mobius->coefficients()) {
        terms.push_back(Json::array({Coalition(bits, doc.d).players(), value}));
      }
      root["terms"] = std::move(terms);
      break;
    }
    case GameKind::kAttributionTable: {
      root["targets"] = doc.attribution->targets;
      Json rows = Json::array();
      for (const auto& row : doc.attribution->values) {
        Json out = Json::array();
        for (const auto& v : row) out.push_back(v ? Json(*v) : Json(nullptr));
        rows.push_back(std::move(out));
      }
      root["values"] = std::move(rows);
      break;
    }
  }
  return root.dump(pretty ? 2 : -1) + "\n";
}

GameDocument DenseDocumentFromModel(std::shared_ptr<const SymbolicModel> model,
                                    std::vector<double> x,
                                    std::vector<double> baseline,
                                    const EngineOptions& options) {
  MaskedModel masked(model, x, baseline);
  GameDocument doc;
  doc.kind = GameKind::kDenseGame;
  doc.d = masked.d();
  doc.values = EnumerateGame(MaskedGame(masked), options);
  doc.model = ModelBlock{model->terms(), std::move(x), std::move(baseline)};
  return doc;
}

}  // namespace metagame
