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

#ifndef METAGAME_GAME_H_
#define METAGAME_GAME_H_

#include <array>
#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "metagame/coalition.h"
#include "metagame/options.h"

namespace metagame {

// A cooperative game v: 2^[d] -> R. Implementations must be pure and safe to
// evaluate concurrently.
class ValueOracle {
 public:
  explicit ValueOracle(int d);
  virtual ~ValueOracle() = default;
  ValueOracle(const ValueOracle&) = delete;
  ValueOracle& operator=(const ValueOracle&) = delete;

  int d() const { return d_; }

  // Throws std::invalid_argument if s.d() != d().
  double Evaluate(const Coalition& s) const;
  // Unchecked fast path; `bits` must be below 2^d.
  double EvaluateBits(std::uint64_t bits) const;

  // Number of Evaluate calls so far. Monotone.
  std::uint64_t eval_count() const {
    return count_.load(std::memory_order_relaxed);
  }

 protected:
  virtual double Value(std::uint64_t bits) const = 0;

 private:
  int d_;
  mutable std::atomic<std::uint64_t> count_{0};
};

using OraclePtr = std::shared_ptr<const ValueOracle>;

// Game backed by an arbitrary callable.
class FunctionGame final : public ValueOracle {
 public:
  FunctionGame(int d, std::function<double(const Coalition&)> fn);

 protected:
  double Value(std::uint64_t bits) const override;

 private:
  std::function<double(const Coalition&)> fn_;
};

// Game backed by a dense table indexed by coalition bit pattern.
class TableGame final : public ValueOracle {
 public:
  // Throws std::invalid_argument unless values.size() == 2^d.
  TableGame(int d, std::vector<double> values);
  const std::vector<double>& values() const { return values_; }

 protected:
  double Value(std::uint64_t bits) const override { return values_[bits]; }

 private:
  std::vector<double> values_;
};

// Memoizing wrapper. The backing oracle is called at most once per distinct
// coalition, including under concurrent use.
class EvaluationCache final : public ValueOracle {
 public:
  explicit EvaluationCache(OraclePtr backing);

  const ValueOracle& backing() const { return *backing_; }
  std::size_t size() const;

 protected:
  double Value(std::uint64_t bits) const override;

 private:
  static constexpr std::size_t kShards = 64;
  struct Shard {
    mutable std::mutex mutex;
    std::unordered_map<std::uint64_t, double> store;
  };

  OraclePtr backing_;
  mutable std::array<Shard, kShards> shards_;
};

// Dense table t[bits(S)] = v(S); evaluates the oracle exactly once per
// coalition. Throws CapacityError above the exact-engine limit.
std::vector<double> EnumerateGame(const ValueOracle& oracle,
                                  const EngineOptions& options = {});

}  // namespace metagame

#endif  // METAGAME_GAME_H_
