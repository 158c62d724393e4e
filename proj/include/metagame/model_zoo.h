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

#ifndef METAGAME_MODEL_ZOO_H_
#define METAGAME_MODEL_ZOO_H_

#include <cstdint>
#include <memory>
#include <vector>

#include "metagame/mobius.h"
#include "metagame/symbolic_model.h"

namespace metagame {

// f(x) = x0 + x0 * x1^2.
std::shared_ptr<const SymbolicModel> Table1Model();

// n_terms monomials. Each support has a size drawn uniformly from
// 1..max_order and members drawn uniformly without replacement; exponents are
// in {1, 2, 3} and coefficients uniform in [-2, 2]. Throws
// std::invalid_argument unless 1 <= max_order <= d and n_terms >= 1.
std::shared_ptr<const SymbolicModel> RandomSparsePolynomial(int d, int max_order,
                                                            int n_terms,
                                                            std::uint64_t seed);

// round(sparsity * 2^d) distinct coalitions (at least one) with coefficients
// of magnitude uniform in [0.1, 2] and random sign. Throws
// std::invalid_argument unless 0 < sparsity <= 1 and the count fits in memory.
MobiusExpansion RandomMobiusExpansion(int d, double sparsity, std::uint64_t seed);
std::shared_ptr<const MobiusGame> RandomMobiusGame(int d, double sparsity,
                                                   std::uint64_t seed);

// v(S) = sum_{i in S} c_i.
std::shared_ptr<const MobiusGame> AdditiveGame(const std::vector<double>& c);

// v(S) = by_size[|S|]; needs by_size.size() == d + 1.
std::shared_ptr<const ValueOracle> SymmetricGame(int d, std::vector<double> by_size);

}  // namespace metagame

#endif  // METAGAME_MODEL_ZOO_H_
