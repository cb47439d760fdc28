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
#include <set>
#include <string_view>
#include <vector>

#include "qgen/generator.hpp"
#include "qgen/types.hpp"

namespace qgen {

// Target for the noisy-parity generator: uniformly random x in {0,1}^n
// labeled by XOR of the bits indexed by S, with the label flipped with
// probability eta.
struct ParitySpec {
  int n = 0;
  std::set<int> s;
  double eta = 0.0;
};

/// Throws InvalidSpec unless n >= 1, S is a nonempty subset of {1..n}, and
/// eta lies strictly inside (0, 1/2).
void validate(const ParitySpec& spec);

/// XOR of the bits of x (an n-bit index, first symbol most significant)
/// selected by S.
int parity_of(const std::set<int>& s, std::uint64_t x, int n);

// The generator's 4(n+1) basis states carry a column j in {0..n}, a parity
// bit, and a free bit. Linearized as 4*j + 2*k_bit + l_bit.
struct BasisIndex {
  int column;
  int k_bit;
  int l_bit;
};

inline int to_linear(const BasisIndex& b) { return 4 * b.column + 2 * b.k_bit + b.l_bit; }
inline BasisIndex from_linear(int index) {
  return {index / 4, (index / 2) % 2, index % 2};
}

/// Builds the 4(n+1)-state generator whose (n+1)-symbol output distribution
/// is the noisy-parity distribution for the spec. The result passes
/// validate().
QuantumGenerator build_parity_qg(const ParitySpec& spec);

/// Closed-form noisy-parity table over {0,1}^(n+1):
/// P(x . c) = 2^-n * (1-eta) when c is the true label, 2^-n * eta otherwise.
OutputDistribution reference_noisy_parity(const ParitySpec& spec);

struct VerificationReport {
  double unitarity_residual = 0.0;
  double tv_distance = 0.0;
  double block_residual = 0.0;
  bool pass = false;
};

inline constexpr int kVerifyCap = 10;  // block check enumerates 2^(2(n+1)) strings

/// Checks the construction against brute force: unitarity of U, total
/// variation against the closed form over one block, and factorization of
/// the two-block distribution into independent block marginals.
VerificationReport verify_construction(const ParitySpec& spec, int threads = 1);

/// Conditions the generator on the given outcome string and returns the
/// basis state supporting each post-measurement state. Throws
/// ZeroProbabilityPath when a conditioned branch has (numerically) zero
/// mass, and VerificationFailed if any state is not a basis state.
std::vector<BasisIndex> trace_basis_path(const ParitySpec& spec, std::string_view outcomes);

/// Parity the construction should carry in the k bit after 1-based step t,
/// i.e. the XOR of the S-position symbols of the current block up to t.
int running_block_parity(const ParitySpec& spec, std::string_view outcomes, int t);

}  // namespace qgen
