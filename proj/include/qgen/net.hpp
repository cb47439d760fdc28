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
#include <iosfwd>
#include <vector>

#include "qgen/gates.hpp"
#include "qgen/generator.hpp"
#include "qgen/types.hpp"

namespace qgen {

// Initial state on the multiplicative grid: entry i is
// (1 - eps0/k)^exponents[i], normalized. Exponents beyond
// max_state_exponent(k, eps0) add nothing the grid can resolve and are
// rejected.
struct DiscretizedState {
  Eigen::VectorXi exponents;
  double eps0 = 0.0;
};

int max_state_exponent(int k, double eps0);
void validate(const DiscretizedState& state);
StateVector discretized_state_vector(const DiscretizedState& state);

// One hypothesis in the net: a circuit, a grid state, and a measurement
// partition, jointly compiling to a validated generator of dimension
// 2^width.
struct NetEntry {
  GateCircuit circuit;
  DiscretizedState state;
  MeasurementPartition measurement;
};

QuantumGenerator compile(const NetEntry& entry);

struct NetParams {
  int width = 1;
  int max_gates = 3;
  int state_grid = 4;           // exponent bound per entry
  double eps0 = 0.2;            // grid ratio parameter, entries scale by (1 - eps0/k)
  std::vector<MeasurementPartition> measurements;
  int dedup_length = 3;         // symbol count for distribution-level dedup
  double dedup_tol = 1e-12;     // l-inf radius under which entries collapse
  std::uint64_t max_raw_entries = 2'000'000;
};

/// Enumerates every circuit of at most max_gates gates crossed with every
/// grid state and every supplied partition, in a fixed order (gate count,
/// then lexicographic gates, then state exponents, then partition order).
/// Entries whose dedup_length-symbol distributions fall within dedup_tol in
/// l-inf of an earlier entry are dropped. Throws EnumerationTooLarge when
/// the raw cross product exceeds max_raw_entries.
std::vector<NetEntry> enumerate_net(const NetParams& params);

/// l-inf gap between the exact and net output distributions guaranteed when
/// both the unitary and the initial state are within eps0: (n + 2) * eps0.
double state_distance_bound(double eps0, int n);

// Manifest persistence: a header line carrying width and eps0, then one
// entry per line as "circuit=<gates> state=<exponents> meas=<bits>".
void save_net(std::ostream& out, const std::vector<NetEntry>& net);
std::vector<NetEntry> load_net(std::istream& in);

}  // namespace qgen
