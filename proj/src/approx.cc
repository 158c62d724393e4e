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

#include "metagame/approx.h"

#include <Eigen/Dense>

#include <bit>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>

#include "metagame/errors.h"
#include "metagame/parallel.h"
#include "metagame/rng.h"

namespace metagame {
namespace {

// Counts distinct oracle calls; repeated coalitions are served from memory.
class CountingMemo {
 public:
  explicit CountingMemo(const ValueOracle& oracle) : oracle_(oracle) {}

  double operator()(std::uint64_t bits) {
    auto it = store_.find(bits);
    if (it != store_.end()) return it->second;
    const double value = oracle_.EvaluateBits(bits);
    store_.emplace(bits, value);
    return value;
  }
  bool contains(std::uint64_t bits) const { return store_.count(bits) != 0; }
  std::uint64_t calls() const { return store_.size(); }

 private:
  const ValueOracle& oracle_;
  std::unordered_map<std::uint64_t, double> store_;
};

// Running mean and unbiased variance per component (Welford).
class MeanVariance {
 public:
  explicit MeanVariance(int d) : mean_(d, 0.0), m2_(d, 0.0) {}

  void Add(const std::vector<double>& sample) {
    ++count_;
    for (std::size_t k = 0; k < mean_.size(); ++k) {
      const double delta = sample[k] - mean_[k];
      mean_[k] += delta / count_;
      m2_[k] += delta * (sample[k] - mean_[k]);
    }
  }
  const std::vector<double>& mean() const { return mean_; }
  // Standard error of the mean; zero with fewer than two samples.
  std::vector<double> StandardError() const {
    std::vector<double> out(mean_.size(), 0.0);
    if (count_ < 2) return out;
    for (std::size_t k = 0; k < out.size(); ++k) {
      out[k] = std::sqrt(std::max(0.0, m2_[k] / (count_ - 1)) / count_);
    }
    return out;
  }

 private:
  std::vector<double> mean_;
  std::vector<double> m2_;
  std::uint64_t count_ = 0;
};

// One observation of the regression: coalition, value minus v(empty), weight.
struct Row {
  std::uint64_t bits;
  double target;
  double weight;
};

// Solves min sum w (y - z.phi)^2 subject to sum phi = total through the KKT
// system. Returns nullopt when the system is singular.
std::optional<std::vector<double>> SolveConstrained(int d,
                                                    const std::vector<Row>& rows,
                                                    double total) {
  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(d + 1, d + 1);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(d + 1);
  std::vector<int> members;
  for (const Row& row : rows) {
    members.clear();
    for (std::uint64_t rest = row.bits; rest != 0; rest &= rest - 1) {
      members.push_back(std::countr_zero(rest));
    }
    for (int a : members) {
      rhs(a) += row.weight * row.target;
      for (int b : members) kkt(a, b) += row.weight;
    }
  }
  for (int k = 0; k < d; ++k) {
    kkt(k, d) = 1.0;
    kkt(d, k) = 1.0;
  }
  rhs(d) = total;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(kkt);
  lu.setThreshold(1e-10);
  if (!lu.isInvertible()) return std::nullopt;
  const Eigen::VectorXd sol = lu.solve(rhs);
  std::vector<double> phi(d);
  double sum = 0.0;
  for (int k = 0; k < d; ++k) {
    phi[k] = sol(k);
    sum += phi[k];
  }
  // Remove rounding drift from the constraint.
  const double correction = (total - sum) / d;
  for (double& p : phi) p += correction;
  return phi;
}

// Uniform subset of the given size by partial Fisher-Yates.
std::uint64_t SampleSubset(int d, int size, CounterRng& rng,
                           std::vector<int>& scratch) {
  scratch.resize(d);
  std::iota(scratch.begin(), scratch.end(), 0);
  std::uint64_t bits = 0;
  for (int k = 0; k < size; ++k) {
    const auto pick = k + static_cast<int>(rng.UniformInt(d - k));
    std::swap(scratch[k], scratch[pick]);
    bits |= std::uint64_t{1} << scratch[k];
  }
  return bits;
}

double KernelSizeMass(int d, int s) {
  return static_cast<double>(d - 1) / (static_cast<double>(s) * (d - s));
}

}  // namespace

std::string_view EstimatorName(Estimator estimator) {
  return estimator == Estimator::kMonteCarlo ? "mc" : "regression";
}

EstimateWithError ShapleyMcPermutation(const ValueOracle& oracle,
                                       const Budget& budget) {
  const int d = oracle.d();
  const std::uint64_t per_permutation = static_cast<std::uint64_t>(d) + 1;
  if (budget.max_evaluations < per_permutation) {
    throw std::invalid_argument("budget " + std::to_string(budget.max_evaluations) +
                                " is below one permutation (" +
                                std::to_string(per_permutation) + " evaluations)");
  }
  std::uint64_t permutations = budget.max_evaluations / per_permutation;
  const bool paired = budget.pairing && permutations >= 2;
  if (paired) permutations -= permutations % 2;

  CountingMemo value(oracle);
  CounterRng rng(budget.seed);
  std::vector<int> order(d);
  std::vector<double> contribution(d), reversed(d), unit(d);
  MeanVariance stats(d);

  auto walk = [&](const std::vector<int>& perm, std::vector<double>& out) {
    std::uint64_t s = 0;
    double previous = value(0);
    for (int player : perm) {
      s |= std::uint64_t{1} << player;
      const double current = value(s);
      out[player] = current - previous;
      previous = current;
    }
  };

  const std::uint64_t units = paired ? permutations / 2 : permutations;
  for (std::uint64_t u = 0; u < units; ++u) {
    std::iota(order.begin(), order.end(), 0);
    rng.Shuffle(std::span<int>(order));
    walk(order, contribution);
    if (paired) {
      std::vector<int> back(order.rbegin(), order.rend());
      walk(back, reversed);
      for (int k = 0; k < d; ++k) unit[k] = 0.5 * (contribution[k] + reversed[k]);
      stats.Add(unit);
    } else {
      stats.Add(contribution);
    }
  }
  return {stats.mean(), stats.StandardError(), value.calls()};
}

EstimateWithError ShapleyRegression(const ValueOracle& oracle, const Budget& budget) {
  const int d = oracle.d();
  const std::uint64_t minimum = static_cast<std::uint64_t>(d) + 2;
  if (budget.max_evaluations < minimum) {
    throw std::invalid_argument("regression budget " +
                                std::to_string(budget.max_evaluations) +
                                " is below d + 2 = " + std::to_string(minimum));
  }
  CountingMemo value(oracle);
  const std::uint64_t full = Coalition::FullMask(d);
  const double empty_value = value(0);
  const double total = value(full) - empty_value;
  if (d == 1) return {{total}, {0.0}, value.calls()};

  const bool exhaustive = d < 40 && budget.max_evaluations >= (std::uint64_t{1} << d);
  if (exhaustive) {
    // Every proper nonempty coalition with weight (d-1) / (C(d,s) s (d-s)).
    std::vector<double> binom(d + 1, 1.0);
    for (int s = 1; s <= d; ++s) binom[s] = binom[s - 1] * (d - s + 1) / s;
    std::vector<Row> rows;
    rows.reserve(full - 1);
    for (std::uint64_t s = 1; s < full; ++s) {
      const int size = std::popcount(s);
      rows.push_back({s, value(s) - empty_value,
                      KernelSizeMass(d, size) / binom[size]});
    }
    auto phi = SolveConstrained(d, rows, total);
    if (!phi) throw EstimationError("exhaustive regression system is singular");
    return {*phi, std::vector<double>(d, 0.0), value.calls()};
  }

  // Kernel distribution over sizes 1..d-1.
  std::vector<double> cumulative(d - 1);
  double mass = 0.0;
  for (int s = 1; s < d; ++s) {
    mass += KernelSizeMass(d, s);
    cumulative[s - 1] = mass;
  }
  CounterRng rng(budget.seed);
  std::vector<int> scratch;
  auto draw_size = [&] {
    const double u = rng.Uniform01() * mass;
    int s = 1;
    while (s < d - 1 && cumulative[s - 1] <= u) ++s;
    return s;
  };

  // Sampling units: single draws, or a draw with its complement.
  std::vector<std::vector<std::uint64_t>> units;
  const std::uint64_t cap = budget.max_evaluations;
  const std::uint64_t max_attempts = 64 * budget.max_evaluations + 1024;
  for (std::uint64_t attempt = 0; attempt < max_attempts && value.calls() < cap;
       ++attempt) {
    const std::uint64_t s = SampleSubset(d, draw_size(), rng, scratch);
    std::vector<std::uint64_t> unit{s};
    if (budget.pairing) unit.push_back(full & ~s);
    std::uint64_t fresh = 0;
    for (std::size_t k = 0; k < unit.size(); ++k) {
      const bool repeat = k == 1 && unit[1] == unit[0];
      if (!repeat && !value.contains(unit[k])) ++fresh;
    }
    if (value.calls() + fresh > cap) break;
    for (std::uint64_t c : unit) value(c);
    units.push_back(std::move(unit));
  }

  auto rows_for = [&](const std::vector<std::size_t>& picks) {
    std::vector<Row> rows;
    for (std::size_t p : picks) {
      for (std::uint64_t c : units[p]) rows.push_back({c, value(c) - empty_value, 1.0});
    }
    return rows;
  };
  std::vector<std::size_t> all(units.size());
  std::iota(all.begin(), all.end(), 0);
  auto phi = SolveConstrained(d, rows_for(all), total);
  if (!phi) {
    throw EstimationError("regression system is singular with " +
                          std::to_string(units.size()) +
                          " sampled coalitions; increase the budget");
  }

  constexpr int kBootstrap = 64;
  CounterRng boot = rng.Split(0xB007);
  MeanVariance spread(d);
  std::vector<std::size_t> picks(units.size());
  int accepted = 0;
  for (int r = 0; r < kBootstrap; ++r) {
    for (auto& p : picks) p = boot.UniformInt(units.size());
    if (auto replicate = SolveConstrained(d, rows_for(picks), total)) {
      spread.Add(*replicate);
      ++accepted;
    }
  }
  std::vector<double> stderrs(d, 0.0);
  if (accepted >= 2) {
    // Bootstrap standard deviation = standard error of the estimate.
    stderrs = spread.StandardError();
    for (double& s : stderrs) s *= std::sqrt(static_cast<double>(accepted));
  }
  return {*phi, stderrs, value.calls()};
}

Estimator DefaultEstimator(int d, bool all_targets) {
  return (all_targets && d <= 40) ? Estimator::kMonteCarlo : Estimator::kRegression;
}

DirectionalMatrix MetaAttributionApprox(const MethodPtr& method,
                                        const Budget& budget,
                                        const std::vector<int>& targets,
                                        Estimator estimator, int threads) {
  if (!method) throw std::invalid_argument("null attribution method");
  const int d = method->d();
  DirectionalMatrix dm;
  dm.d = d;
  dm.base = method->tag();
  dm.targets = targets;
  dm.entries.assign(targets.size() * d, 0.0);
  dm.stderrs.assign(targets.size() * d, 0.0);
  dm.first_order.assign(targets.size(), 0.0);
  for (int t : targets) {
    if (t < 0 || t >= d) {
      throw std::invalid_argument("target " + std::to_string(t) + " out of range");
    }
  }

  const CounterRng root(budget.seed);
  ParallelFor(targets.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      const int i = targets[r];
      double* row = dm.entries.data() + r * d;
      double* err = dm.stderrs.data() + r * d;
      row[i] = method->Restricted(Coalition::Empty(d).with(i), i);
      dm.first_order[r] = method->Restricted(Coalition::Full(d), i);
      if (d == 1) continue;

      Budget local = budget;
      local.seed = root.Split(static_cast<std::uint64_t>(i))();
      const MetaGameOracle game(method, i);
      EstimateWithError est;
      try {
        est = estimator == Estimator::kMonteCarlo ? ShapleyMcPermutation(game, local)
                                                  : ShapleyRegression(game, local);
      } catch (const EstimationError& e) {
        throw EstimationError("target " + std::to_string(i) + ": " + e.what());
      } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("target " + std::to_string(i) + ": " + e.what());
      }
      for (int p = 0; p < d - 1; ++p) {
        const int source = MetaGameOracle::PlayerToSource(p, i);
        row[source] = est.values[p];
        err[source] = est.stderrs[p];
      }
    }
  });
  return dm;
}

}  // namespace metagame
