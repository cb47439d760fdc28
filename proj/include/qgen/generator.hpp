// Copyright 2026 The qgen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "qgen/types.hpp"

namespace qgen {

/// Checks every generator invariant and returns the generator unchanged.
/// Throws Error with the first violated invariant: DimensionMismatch,
/// UnnormalizedState, NonUnitary, or IncompletePartition.
const QuantumGenerator& validate(const QuantumGenerator& qg);

/// One observed step: apply U, project onto each outcome subspace, and
/// renormalize. Entries appear only for outcomes whose branch mass exceeds
/// the pruning threshold; their probabilities sum to the input state's mass.
struct StepOutcome {
  int outcome;
  double probability;
  StateVector post;
};
std::vector<StepOutcome> measure_step(const StateVector& state, const QuantumGenerator& qg);

/// Probability of emitting exactly the given symbols, computed as the squared
/// norm of the projected forward vector M_{x_n} U ... M_{x_1} U |psi_0> with
/// no intermediate renormalization.
double sequence_probability(const QuantumGenerator& qg, std::string_view bits);
double sequence_probability(const QuantumGenerator& qg, std::uint64_t index, int length);

struct EnumOptions {
  int max_length = kDefaultTableCap;
  int threads = 1;
};

/// Full probability table over {0,1}^n, by depth-first traversal of the
/// outcome tree. Branches whose mass falls below the pruning threshold are
/// zero-filled. Subtrees at a fixed depth may be evaluated in parallel; the
/// table ordering and values do not depend on the thread count.
OutputDistribution exact_distribution(const QuantumGenerator& qg, int n,
                                      const EnumOptions& options = {});

/// Draws one n-symbol output by stepwise collapse. The caller owns the RNG
/// stream; results are reproducible given the stream state.
std::string sample(const QuantumGenerator& qg, int n, std::mt19937_64& rng);
std::string sample(const QuantumGenerator& qg, int n, std::uint64_t seed);
std::uint64_t sample_index(const QuantumGenerator& qg, int n, std::mt19937_64& rng);

/// Uniform double in [0, 1) from the top 53 bits of the generator output;
/// identical across platforms, unlike std::uniform_real_distribution.
inline double next_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace qgen
