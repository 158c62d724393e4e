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

#include "metagame/interactions.h"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "metagame/errors.h"
#include "metagame/kernels.h"
#include "metagame/shapley.h"

namespace metagame {
namespace {

// C(n, k) as a double; exact for the sizes the exact engines reach.
double Binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double out = 1.0;
  for (int r = 1; r <= k; ++r) out = out * (n - k + r) / r;
  return out;
}

template <typename Fn>
void ForEachPairIn(std::uint64_t bits, Fn&& fn) {
  for (std::uint64_t a = bits; a != 0; a &= a - 1) {
    const int i = std::countr_zero(a);
    for (std::uint64_t b = a & (a - 1); b != 0; b &= b - 1) {
      fn(i, std::countr_zero(b));
    }
  }
}

// Adds `value` to every pair inside T, scaled by pair_weight(|T|).
template <typename Weight>
PairIndex PairsFromMobius(const MobiusExpansion& expansion, PairTag tag,
                          Weight&& pair_weight) {
  PairIndex out(expansion.d(), tag);
  for (const auto& [bits, value] : expansion.coefficients()) {
    const int size = std::popcount(bits);
    if (size < 2) continue;
    const double share = value * pair_weight(size);
    ForEachPairIn(bits, [&](int i, int j) {
      out.set_pair(i, j, out.pair(i, j) + share);
    });
  }
  return out;
}

void SetMobiusSingles(const MobiusExpansion& expansion, PairIndex& out) {
  for (const auto& [bits, value] : expansion.coefficients()) {
    if (std::popcount(bits) == 1) out.set_single(std::countr_zero(bits), value);
  }
}

}  // namespace

std::string_view PairTagName(PairTag tag) {
  switch (tag) {
    case PairTag::kStii:
      return "stii";
    case PairTag::kFsii:
      return "fsii";
    case PairTag::kTwoShapley:
      return "2sv";
    case PairTag::kSop:
      return "sop";
    case PairTag::kMobius2:
      return "mobius";
    case PairTag::kSymmetrizedMeta:
      return "symmetrized-meta";
  }
  return "unknown";
}

std::string_view SerialTagName(SerialTag tag) {
  return tag == SerialTag::kSerialShapley ? "serial-sv" : "ih";
}

PairIndex::PairIndex(int d, PairTag tag)
    : d_(d),
      tag_(tag),
      singles_(d, 0.0),
      pairs_(static_cast<std::size_t>(d) * (d - 1) / 2, 0.0) {
  if (d < 1) throw std::invalid_argument("pair index needs at least one player");
}

std::size_t PairIndex::Slot(int i, int j) const {
  if (i == j || i < 0 || j < 0 || i >= d_ || j >= d_) {
    throw std::invalid_argument("invalid pair (" + std::to_string(i) + ", " +
                                std::to_string(j) + ")");
  }
  if (i > j) std::swap(i, j);
  // Row-major upper triangle without the diagonal.
  return static_cast<std::size_t>(i) * (2 * d_ - i - 1) / 2 + (j - i - 1);
}

double PairIndex::pair(int i, int j) const {
  if (i == j) return 0.0;
  return pairs_[Slot(i, j)];
}

void PairIndex::set_pair(int i, int j, double value) { pairs_[Slot(i, j)] = value; }

std::vector<double> PairIndex::PairMatrix() const {
  std::vector<double> out(static_cast<std::size_t>(d_) * d_, 0.0);
  for (int i = 0; i < d_; ++i) {
    for (int j = 0; j < d_; ++j) out[i * d_ + j] = pair(i, j);
  }
  return out;
}

std::vector<double> PairIndex::HalfPairDecomposition() const {
  std::vector<double> out(d_);
  for (int i = 0; i < d_; ++i) {
    double row = 0.0;
    for (int j = 0; j < d_; ++j) {
      if (j != i) row += pair(i, j);
    }
    out[i] = singles_[i] + 0.5 * row;
  }
  return out;
}

std::vector<double> SerialMatrix::RowSums() const {
  std::vector<double> out(d, 0.0);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) out[i] += at(i, j);
  }
  return out;
}

SerialMatrix SerialShapley(const ValueOracle& game, const EngineOptions& options) {
  const ShapleyMethod inner(game, options);
  const int d = game.d();
  SerialMatrix out{d, SerialTag::kSerialShapley,
                   std::vector<double>(static_cast<std::size_t>(d) * d)};
  for (int i = 0; i < d; ++i) {
    const std::vector<double> g = inner.RestrictedTable(i);
    const std::vector<double> row = ShapleyFromTable(d, g);
    std::copy(row.begin(), row.end(), out.entries.begin() + i * d);
  }
  return out;
}

SerialMatrix SerialShapley(const MaskedModel& masked, const EngineOptions& options) {
  return SerialShapley(MaskedGame(masked), options);
}

SerialMatrix IntegratedHessians(const MaskedModel& masked, int steps) {
  if (steps < 1) throw std::invalid_argument("steps must be positive");
  const Model& model = masked.model();
  const int d = masked.d();
  const auto& x = masked.x();
  const auto& b = masked.baseline();
  std::vector<double> dx(d);
  for (int k = 0; k < d; ++k) dx[k] = x[k] - b[k];

  SerialMatrix out{d, SerialTag::kIntegratedHessians,
                   std::vector<double>(static_cast<std::size_t>(d) * d, 0.0)};
  const double inv = 1.0 / steps;

  switch (model.differentiability()) {
    case Differentiability::kNone:
      throw UnsupportedError("integrated Hessians need a differentiable model");

    case Differentiability::kExact: {
      std::vector<double> point(d), grad(d), hess(static_cast<std::size_t>(d) * d);
      std::vector<double> grad_sum(d), hess_sum(hess.size());
      for (int a = 0; a < steps; ++a) {
        const double alpha = (a + 0.5) * inv;
        std::fill(grad_sum.begin(), grad_sum.end(), 0.0);
        std::fill(hess_sum.begin(), hess_sum.end(), 0.0);
        for (int c = 0; c < steps; ++c) {
          const double beta = (c + 0.5) * inv;
          const double t = alpha * beta;
          for (int k = 0; k < d; ++k) point[k] = b[k] + t * dx[k];
          model.Gradient(point, grad);
          model.Hessian(point, hess);
          for (int k = 0; k < d; ++k) grad_sum[k] += grad[k];
          for (std::size_t k = 0; k < hess.size(); ++k) hess_sum[k] += beta * hess[k];
        }
        // d h_i / d z_j at z = b + alpha (x - b).
        for (int i = 0; i < d; ++i) {
          for (int j = 0; j < d; ++j) {
            double dh = alpha * dx[i] * hess_sum[i * d + j] * inv;
            if (i == j) dh += grad_sum[i] * inv;
            out.entries[i * d + j] += dh;
          }
        }
      }
      break;
    }

    case Differentiability::kFiniteDifference: {
      constexpr double kStep = 1e-4;
      std::vector<double> path(d);
      auto inner_ig = [&](const std::vector<double>& z, int i) {
        double sum = 0.0;
        for (int c = 0; c < steps; ++c) {
          const double beta = (c + 0.5) * inv;
          for (int k = 0; k < d; ++k) path[k] = b[k] + beta * (z[k] - b[k]);
          sum += model.Partial(path, i);
        }
        return (z[i] - b[i]) * sum * inv;
      };
      std::vector<double> z(d);
      for (int a = 0; a < steps; ++a) {
        const double alpha = (a + 0.5) * inv;
        for (int i = 0; i < d; ++i) {
          for (int j = 0; j < d; ++j) {
            for (int k = 0; k < d; ++k) z[k] = b[k] + alpha * dx[k];
            z[j] += kStep;
            const double up = inner_ig(z, i);
            z[j] -= 2 * kStep;
            const double down = inner_ig(z, i);
            out.entries[i * d + j] += (up - down) / (2 * kStep);
          }
        }
      }
      break;
    }
  }

  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) out.entries[i * d + j] *= dx[j] * inv;
  }
  return out;
}

PairIndex StiiFromTable(int d, const std::vector<double>& table) {
  if (table.size() != (std::size_t{1} << d)) {
    throw std::invalid_argument("table length does not match 2^d");
  }
  PairIndex out(d, PairTag::kStii);
  for (int i = 0; i < d; ++i) {
    out.set_single(i, table[std::size_t{1} << i] - table[0]);
  }
  if (d == 1) return out;

  // Weight of S subset [d] \ {i, j}: 2 / (d * C(d-1, |S|)), laid out over the
  // d-1 players that remain after removing i.
  std::vector<double> size_weights(d - 1);
  for (int s = 0; s + 1 < d; ++s) size_weights[s] = 2.0 / (d * Binomial(d - 1, s));
  const std::vector<double> weights = ExpandSizeWeights(d - 1, size_weights);

  std::vector<double> derivative(table.size() / 2);
  for (int i = 0; i < d; ++i) {
    kernels::BitDerivative(table, i, derivative);
    for (int j = i + 1; j < d; ++j) {
      // j sits one position lower once bit i is removed.
      out.set_pair(i, j, kernels::MarginalDot(derivative, weights, j - 1));
    }
  }
  return out;
}

PairIndex StiiPairwise(const ValueOracle& game, const EngineOptions& options) {
  return StiiFromTable(game.d(), EnumerateGame(game, options));
}

PairIndex StiiViaMobius(const MobiusExpansion& expansion) {
  PairIndex out = PairsFromMobius(expansion, PairTag::kStii, [](int size) {
    return 1.0 / Binomial(size, 2);
  });
  SetMobiusSingles(expansion, out);
  return out;
}

PairIndex FsiiViaMobius(const MobiusExpansion& expansion) {
  PairIndex out = PairsFromMobius(expansion, PairTag::kFsii, [](int size) {
    return size == 2 ? 1.0 : 6.0 / (size * (size + 1.0));
  });
  SetMobiusSingles(expansion, out);
  for (const auto& [bits, value] : expansion.coefficients()) {
    const int size = std::popcount(bits);
    if (size <= 2) continue;
    const double share = value * 2.0 * (size - 2) / (size * (size + 1.0));
    for (std::uint64_t rest = bits; rest != 0; rest &= rest - 1) {
      const int i = std::countr_zero(rest);
      out.set_single(i, out.single(i) - share);
    }
  }
  return out;
}

PairIndex TwoShapleyViaMobius(const MobiusExpansion& expansion) {
  PairIndex out = PairsFromMobius(expansion, PairTag::kTwoShapley, [](int size) {
    return 1.0 / (size - 1);
  });
  for (const auto& [bits, value] : expansion.coefficients()) {
    const int size = std::popcount(bits);
    if (size == 0) continue;
    const double share = size == 1 ? value : value * (1.0 / size - 0.5);
    for (std::uint64_t rest = bits; rest != 0; rest &= rest - 1) {
      const int i = std::countr_zero(rest);
      out.set_single(i, out.single(i) + share);
    }
  }
  return out;
}

PairIndex MobiusPairs(const MobiusExpansion& expansion) {
  PairIndex out(expansion.d(), PairTag::kMobius2);
  for (const auto& [bits, value] : expansion.coefficients()) {
    const int size = std::popcount(bits);
    if (size == 1) out.set_single(std::countr_zero(bits), value);
    if (size == 2) {
      const int i = std::countr_zero(bits);
      const int j = std::countr_zero(bits & (bits - 1));
      out.set_pair(i, j, value);
    }
  }
  return out;
}

SopResult SopPairwise(const MaskedModel& masked, int steps,
                      const EngineOptions& options) {
  const int d = masked.d();
  RequireExact(d, options);
  if (steps < 1) throw std::invalid_argument("steps must be positive");

  SopResult out{PairIndex(d, PairTag::kSop),
                std::vector<double>(static_cast<std::size_t>(d) * d, 0.0)};
  const double empty_value = masked.Evaluate(Coalition::Empty(d));
  for (int i = 0; i < d; ++i) {
    out.set_based.set_single(
        i, masked.Evaluate(Coalition::Empty(d).with(i)) - empty_value);
  }
  if (d == 1) return out;

  const std::uint64_t full = Coalition::FullMask(d);
  for (int i = 0; i < d; ++i) {
    std::unordered_map<std::uint64_t, double> ig_memo;
    auto ig = [&](std::uint64_t s) {
      auto it = ig_memo.find(s);
      if (it != ig_memo.end()) return it->second;
      const double value = IntegratedGradients(masked, Coalition(s, d), i, steps);
      ig_memo.emplace(s, value);
      return value;
    };
    const std::uint64_t bi = std::uint64_t{1} << i;
    for (int j = 0; j < d; ++j) {
      if (j == i) continue;
      const std::uint64_t bj = std::uint64_t{1} << j;
      double sum = 0.0;
      ForEachSubmaskAscending(full & ~bi & ~bj, [&](std::uint64_t s) {
        const double weight =
            1.0 / ((d - 1) * Binomial(d - 2, std::popcount(s)));
        sum += weight * (ig(s | bi | bj) - ig(s | bi));
      });
      out.directional[i * d + j] = sum;
    }
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      out.set_based.set_pair(i, j, out.directional[i * d + j] +
                                       out.directional[j * d + i]);
    }
  }
  return out;
}

}  // namespace metagame
