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

#include <string>
#include <string_view>
#include <vector>

#include "qgen/types.hpp"

namespace qgen {

// The working gate set: identity, the scaled Hadamard S = (1+i)/2 [[1,1],[1,-1]],
// the phase gate K = diag(1, i), controlled-NOT, and Toffoli.
enum class GateKind { identity, s, k, cnot, toffoli };

int gate_arity(GateKind kind);
std::string_view gate_name(GateKind kind);

struct Gate {
  GateKind kind;
  std::vector<int> wires;
};

struct GateCircuit {
  int width = 1;
  std::vector<Gate> gates;
};

/// Embeds the gate on its wires into the full 2^width-dimensional unitary.
/// Wire 0 is the most significant bit of the basis index, so |a,b> has
/// index 2a + b at width 2. Throws BadWires for repeated or out-of-range
/// wires.
CMatrix gate_unitary(const Gate& gate, int width);

/// Product of the gate unitaries in application order (first listed gate
/// acts first).
CMatrix circuit_unitary(const GateCircuit& circuit);

std::string format_circuit(const GateCircuit& circuit);
GateCircuit parse_circuit(std::string_view text, int width);

}  // namespace qgen
