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

#include "inputs.h"

#include <charconv>
#include <cmath>

#include "metagame/errors.h"
#include "metagame/game_io.h"
#include "metagame/model_zoo.h"
#include "metagame/report.h"
#include "metagame/rng.h"

namespace metagame::cli {
namespace {

std::vector<std::string> Split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(text.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename T>
T ParseNumber(const std::string& field, const std::string& where) {
  T value{};
  const char* end = field.data() + field.size();
  auto [p, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc() || p != end) {
    throw ParseError(where, "cannot parse '" + field + "' as a number");
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(value)) throw ParseError(where, "number is not finite");
  }
  return value;
}

ResolvedInput FromModel(std::shared_ptr<const SymbolicModel> model,
                        std::vector<double> x, const InputFlags& flags,
                        std::string source) {
  const int d = model->dim();
  if (!flags.x.empty()) x = ParseDoubleList(flags.x, "--x");
  std::vector<double> baseline(d, 0.0);
  if (!flags.baseline.empty()) baseline = ParseDoubleList(flags.baseline, "--baseline");
  if (static_cast<int>(x.size()) != d) {
    throw ParseError("--x", "expected " + std::to_string(d) + " values");
  }
  if (static_cast<int>(baseline.size()) != d) {
    throw ParseError("--baseline", "expected " + std::to_string(d) + " values");
  }
  ResolvedInput in;
  in.d = d;
  in.source = std::move(source);
  in.model = model;
  in.masked.emplace(model, std::move(x), std::move(baseline));
  in.game = std::make_shared<const MaskedGame>(*in.masked);
  return in;
}

ResolvedInput FromBuiltin(const InputFlags& flags) {
  const auto parts = Split(flags.model, ':');
  const std::string& name = parts[0];
  const std::string where = "--model";
  auto expect = [&](std::size_t n, const char* usage) {
    if (parts.size() != n) throw ParseError(where, std::string("expected ") + usage);
  };
  if (name == "table1") {
    expect(1, "table1");
    return FromModel(Table1Model(), {2.0, 3.0}, flags, flags.model);
  }
  if (name == "poly") {
    expect(5, "poly:D:ORDER:TERMS:SEED");
    const int d = ParseNumber<int>(parts[1], where);
    const int order = ParseNumber<int>(parts[2], where);
    const int terms = ParseNumber<int>(parts[3], where);
    const auto seed = ParseNumber<std::uint64_t>(parts[4], where);
    if (d < 1 || d > kMaxPlayers) throw ParseError(where, "D out of range");
    std::shared_ptr<const SymbolicModel> model;
    try {
      model = RandomSparsePolynomial(d, order, terms, seed);
    } catch (const std::invalid_argument& e) {
      throw ParseError(where, e.what());
    }
    CounterRng rng = CounterRng(seed).Split(1);
    std::vector<double> x(d);
    for (double& v : x) v = rng.Uniform(-1.5, 1.5);
    return FromModel(model, std::move(x), flags, flags.model);
  }
  if (name == "mobius" || name == "additive") {
    if (!flags.x.empty() || !flags.baseline.empty()) {
      throw ParseError("--x", "set-function games take no input point");
    }
    ResolvedInput in;
    in.source = flags.model;
    if (name == "mobius") {
      expect(4, "mobius:D:SPARSITY:SEED");
      const int d = ParseNumber<int>(parts[1], where);
      const double sparsity = ParseNumber<double>(parts[2], where);
      const auto seed = ParseNumber<std::uint64_t>(parts[3], where);
      try {
        in.game = RandomMobiusGame(d, sparsity, seed);
      } catch (const std::invalid_argument& e) {
        throw ParseError(where, e.what());
      }
    } else {
      expect(2, "additive:C0,C1,...");
      in.game = AdditiveGame(ParseDoubleList(parts[1], where));
    }
    in.d = in.game->d();
    return in;
  }
  throw ParseError(where, "unknown model '" + name +
                              "' (expected table1, poly:..., mobius:... or additive:...)");
}

ResolvedInput FromFile(const InputFlags& flags) {
  GameDocument doc = ReadGameFile(flags.game);
  if (doc.kind == GameKind::kDenseGame && doc.model) {
    auto model = std::make_shared<const SymbolicModel>(doc.d, doc.model->monomials);
    InputFlags local = flags;
    if (local.x.empty()) local.x = JoinDoubles(doc.model->x);
    if (local.baseline.empty()) local.baseline = JoinDoubles(doc.model->baseline);
    if (local.x != JoinDoubles(doc.model->x) ||
        local.baseline != JoinDoubles(doc.model->baseline)) {
      throw ParseError("--x", "a game file fixes its own input point and baseline");
    }
    ResolvedInput in = FromModel(model, {}, local, flags.game);
    // The file's table is authoritative for the game itself.
    in.game = doc.Game();
    return in;
  }
  if (!flags.x.empty() || !flags.baseline.empty()) {
    throw ParseError("--x", "this game file has no model to evaluate at a point");
  }
  ResolvedInput in;
  in.d = doc.d;
  in.source = flags.game;
  if (doc.kind == GameKind::kAttributionTable) {
    in.table = std::move(doc.attribution);
  } else {
    in.game = doc.Game();
  }
  return in;
}

}  // namespace

std::vector<double> ParseDoubleList(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  for (const std::string& field : Split(text, ',')) {
    out.push_back(ParseNumber<double>(field, flag));
  }
  return out;
}

std::vector<int> ParseIntList(const std::string& text, const std::string& flag) {
  std::vector<int> out;
  for (const std::string& field : Split(text, ',')) {
    out.push_back(ParseNumber<int>(field, flag));
  }
  return out;
}

std::string JoinDoubles(const std::vector<double>& values) {
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) out += ',';
    out += FormatDouble(values[k]);
  }
  return out;
}

std::string JoinInts(const std::vector<int>& values) {
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(values[k]);
  }
  return out;
}

ResolvedInput ResolveInput(const InputFlags& flags) {
  if (flags.model.empty() == flags.game.empty()) {
    throw ParseError("--model", "give exactly one of --model or --game");
  }
  return flags.model.empty() ? FromFile(flags) : FromBuiltin(flags);
}

}  // namespace metagame::cli
