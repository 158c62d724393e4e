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

#ifndef METAGAME_COALITION_H_
#define METAGAME_COALITION_H_

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace metagame {

inline constexpr int kMaxPlayers = 63;

// A subset of the players {0, ..., d-1}. Bit k of `bits()` is set iff player k
// is present; dense tables over all coalitions are indexed by this pattern.
class Coalition {
 public:
  constexpr Coalition() = default;
  // Throws std::invalid_argument if d is out of [1, 63] or bits >= 2^d.
  Coalition(std::uint64_t bits, int d);

  static Coalition Empty(int d) { return Coalition(0, d); }
  static Coalition Full(int d) { return Coalition(FullMask(d), d); }
  static Coalition Of(std::initializer_list<int> players, int d);
  static Coalition Of(const std::vector<int>& players, int d);

  static constexpr std::uint64_t FullMask(int d) {
    return d >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << d) - 1;
  }

  std::uint64_t bits() const { return bits_; }
  int d() const { return d_; }
  int size() const { return std::popcount(bits_); }
  bool empty() const { return bits_ == 0; }
  bool contains(int player) const { return (bits_ >> player) & 1u; }
  bool is_subset_of(const Coalition& other) const {
    return (bits_ & ~other.bits_) == 0;
  }

  Coalition with(int player) const;
  Coalition without(int player) const;
  Coalition union_with(const Coalition& other) const;
  Coalition minus(const Coalition& other) const;
  Coalition complement() const { return Coalition(~bits_ & FullMask(d_), d_); }

  std::vector<int> players() const;
  // "{0,2,5}"
  std::string ToString() const;

  friend bool operator==(const Coalition&, const Coalition&) = default;

 private:
  void CheckPlayer(int player) const;
  void CheckSameGame(const Coalition& other) const;

  std::uint64_t bits_ = 0;
  int d_ = 1;
};

// Bit-pattern helpers used by the table-based engines.

// Removes bit `bit` from `mask`, shifting the higher bits down by one.
constexpr std::uint64_t RemoveBit(std::uint64_t mask, int bit) {
  const std::uint64_t low = mask & ((std::uint64_t{1} << bit) - 1);
  return low | ((mask >> (bit + 1)) << bit);
}

// Inverse of RemoveBit: opens a zero at position `bit`.
constexpr std::uint64_t InsertZeroBit(std::uint64_t mask, int bit) {
  const std::uint64_t low = mask & ((std::uint64_t{1} << bit) - 1);
  return low | ((mask >> bit) << (bit + 1));
}

// Visits every submask of `mask` in ascending numeric order.
template <typename Fn>
void ForEachSubmaskAscending(std::uint64_t mask, Fn&& fn) {
  std::uint64_t sub = 0;
  while (true) {
    fn(sub);
    if (sub == mask) break;
    // Next submask in increasing order.
    sub = (sub - mask) & mask;
  }
}

}  // namespace metagame

#endif  // METAGAME_COALITION_H_
