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

#include "metagame/coalition.h"

#include <sstream>
#include <stdexcept>

#include "metagame/errors.h"
#include "metagame/options.h"

namespace metagame {

Coalition::Coalition(std::uint64_t bits, int d) : bits_(bits), d_(d) {
  if (d < 1 || d > kMaxPlayers) {
    throw std::invalid_argument("player count must be in [1, 63], got " +
                                std::to_string(d));
  }
  if ((bits & ~FullMask(d)) != 0) {
    throw std::invalid_argument("coalition bits exceed player count " +
                                std::to_string(d));
  }
}

Coalition Coalition::Of(std::initializer_list<int> players, int d) {
  return Of(std::vector<int>(players), d);
}

Coalition Coalition::Of(const std::vector<int>& players, int d) {
  Coalition c = Empty(d);
  for (int p : players) {
    if (c.contains(p)) {
      throw std::invalid_argument("player " + std::to_string(p) + " listed twice");
    }
    c = c.with(p);
  }
  return c;
}

void Coalition::CheckPlayer(int player) const {
  if (player < 0 || player >= d_) {
    throw std::invalid_argument("player " + std::to_string(player) +
                                " outside [0, " + std::to_string(d_) + ")");
  }
}

void Coalition::CheckSameGame(const Coalition& other) const {
  if (other.d_ != d_) {
    throw std::invalid_argument("coalitions over different player counts");
  }
}

Coalition Coalition::with(int player) const {
  CheckPlayer(player);
  return Coalition(bits_ | (std::uint64_t{1} << player), d_);
}

Coalition Coalition::without(int player) const {
  CheckPlayer(player);
  return Coalition(bits_ & ~(std::uint64_t{1} << player), d_);
}

Coalition Coalition::union_with(const Coalition& other) const {
  CheckSameGame(other);
  return Coalition(bits_ | other.bits_, d_);
}

Coalition Coalition::minus(const Coalition& other) const {
  CheckSameGame(other);
  return Coalition(bits_ & ~other.bits_, d_);
}

std::vector<int> Coalition::players() const {
  std::vector<int> out;
  out.reserve(size());
  for (int k = 0; k < d_; ++k) {
    if (contains(k)) out.push_back(k);
  }
  return out;
}

std::string Coalition::ToString() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int p : players()) {
    if (!first) os << ',';
    os << p;
    first = false;
  }
  os << '}';
  return os.str();
}

void RequireExact(int d, const EngineOptions& options) {
  if (d > options.max_exact_players) {
    throw CapacityError(
        "d = " + std::to_string(d) + " exceeds the exact-engine limit of " +
        std::to_string(options.max_exact_players) +
        " players; use the sampling approximators (--approx) instead");
  }
}

}  // namespace metagame
