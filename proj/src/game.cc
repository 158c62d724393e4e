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

#include "metagame/game.h"

#include <stdexcept>
#include <string>
#include <utility>

#include "metagame/parallel.h"

namespace metagame {

ValueOracle::ValueOracle(int d) : d_(d) {
  if (d < 1 || d > kMaxPlayers) {
    throw std::invalid_argument("player count must be in [1, 63], got " +
                                std::to_string(d));
  }
}

double ValueOracle::Evaluate(const Coalition& s) const {
  if (s.d() != d_) {
    throw std::invalid_argument("coalition over " + std::to_string(s.d()) +
                                " players passed to a " + std::to_string(d_) +
                                "-player game");
  }
  return EvaluateBits(s.bits());
}

double ValueOracle::EvaluateBits(std::uint64_t bits) const {
  count_.fetch_add(1, std::memory_order_relaxed);
  return Value(bits);
}

FunctionGame::FunctionGame(int d, std::function<double(const Coalition&)> fn)
    : ValueOracle(d), fn_(std::move(fn)) {}

double FunctionGame::Value(std::uint64_t bits) const {
  return fn_(Coalition(bits, d()));
}

TableGame::TableGame(int d, std::vector<double> values)
    : ValueOracle(d), values_(std::move(values)) {
  if (d > 32 || values_.size() != (std::size_t{1} << d)) {
    throw std::invalid_argument("dense game over " + std::to_string(d) +
                                " players needs 2^d values, got " +
                                std::to_string(values_.size()));
  }
}

EvaluationCache::EvaluationCache(OraclePtr backing)
    : ValueOracle(backing ? backing->d() : 0), backing_(std::move(backing)) {}

std::size_t EvaluationCache::size() const {
  std::size_t total = 0;
  for (const auto& shard : shards_) {
    std::lock_guard<std::mutex> lock(shard.mutex);
    total += shard.store.size();
  }
  return total;
}

double EvaluationCache::Value(std::uint64_t bits) const {
  // Fibonacci hashing spreads neighbouring patterns over shards.
  Shard& shard = shards_[(bits * 0x9E3779B97F4A7C15ull) >> 58];
  std::lock_guard<std::mutex> lock(shard.mutex);
  auto it = shard.store.find(bits);
  if (it != shard.store.end()) return it->second;
  const double value = backing_->EvaluateBits(bits);
  shard.store.emplace(bits, value);
  return value;
}

std::vector<double> EnumerateGame(const ValueOracle& oracle,
                                  const EngineOptions& options) {
  RequireExact(oracle.d(), options);
  const std::size_t n = std::size_t{1} << oracle.d();
  std::vector<double> table(n);
  ParallelFor(n, options.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) table[s] = oracle.EvaluateBits(s);
  });
  return table;
}

}  // namespace metagame
