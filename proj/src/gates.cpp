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

#include "qgen/gates.hpp"

#include <array>
#include <cstdint>

namespace qgen {

int gate_arity(GateKind kind) {
  switch (kind) {
    case GateKind::identity:
    case GateKind::s:
    case GateKind::k:
      return 1;
    case GateKind::cnot:
      return 2;
    case GateKind::toffoli:
      return 3;
  }
  return 0;
}

std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::identity: return "I";
    case GateKind::s: return "S";
    case GateKind::k: return "K";
    case GateKind::cnot: return "CNOT";
    case GateKind::toffoli: return "TOFFOLI";
  }
  return "?";
}

namespace {

void check_wires(const Gate& gate, int width) {
  if (static_cast<int>(gate.wires.size()) != gate_arity(gate.kind)) {
    throw Error(Errc::bad_wires, std::string(gate_name(gate.kind)) + " takes " +
                                     std::to_string(gate_arity(gate.kind)) + " wires");
  }
  for (std::size_t a = 0; a < gate.wires.size(); ++a) {
    if (gate.wires[a] < 0 || gate.wires[a] >= width) {
      throw Error(Errc::bad_wires, "wire index out of range for width " + std::to_string(width));
    }
    for (std::size_t b = a + 1; b < gate.wires.size(); ++b) {
      if (gate.wires[a] == gate.wires[b]) {
        throw Error(Errc::bad_wires, "wire indices must be distinct");
      }
    }
  }
}

int wire_bit(std::uint64_t index, int width, int wire) {
  return static_cast<int>((index >> (width - 1 - wire)) & 1u);
}

std::uint64_t flip_wire(std::uint64_t index, int width, int wire) {
  return index ^ (std::uint64_t{1} << (width - 1 - wire));
}

CMatrix embed_single(const Eigen::Matrix2cd& g, int width, int wire) {
  const Eigen::Index dim = Eigen::Index{1} << width;
  CMatrix u = CMatrix::Zero(dim, dim);
  for (std::uint64_t col = 0; col < static_cast<std::uint64_t>(dim); ++col) {
    const int a = wire_bit(col, width, wire);
    const std::uint64_t partner = flip_wire(col, width, wire);
    u(static_cast<Eigen::Index>(col), static_cast<Eigen::Index>(col)) = g(a, a);
    u(static_cast<Eigen::Index>(partner), static_cast<Eigen::Index>(col)) = g(a ^ 1, a);
  }
  return u;
}

}  // namespace

CMatrix gate_unitary(const Gate& gate, int width) {
  if (width < 1 || width > 20) {
    throw Error(Errc::bad_wires, "circuit width must lie in [1, 20]");
  }
  check_wires(gate, width);
  const Eigen::Index dim = Eigen::Index{1} << width;

  switch (gate.kind) {
    case GateKind::identity:
      return CMatrix::Identity(dim, dim);
    case GateKind::s: {
      Eigen::Matrix2cd g;
      const Complex w{0.5, 0.5};
      g << w, w, w, -w;
      return embed_single(g, width, gate.wires[0]);
    }
    case GateKind::k: {
      Eigen::Matrix2cd g;
      g << Complex{1, 0}, Complex{0, 0}, Complex{0, 0}, Complex{0, 1};
      return embed_single(g, width, gate.wires[0]);
    }
    case GateKind::cnot: {
      CMatrix u = CMatrix::Zero(dim, dim);
      for (std::uint64_t col = 0; col < static_cast<std::uint64_t>(dim); ++col) {
        std::uint64_t row = col;
        if (wire_bit(col, width, gate.wires[0]) == 1) {
          row = flip_wire(col, width, gate.wires[1]);
        }
        u(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = Complex{1, 0};
      }
      return u;
    }
    case GateKind::toffoli: {
      CMatrix u = CMatrix::Zero(dim, dim);
      for (std::uint64_t col = 0; col < static_cast<std::uint64_t>(dim); ++col) {
        std::uint64_t row = col;
        if (wire_bit(col, width, gate.wires[0]) == 1 &&
            wire_bit(col, width, gate.wires[1]) == 1) {
          row = flip_wire(col, width, gate.wires[2]);
        }
        u(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = Complex{1, 0};
      }
      return u;
    }
  }
  throw Error(Errc::bad_wires, "unknown gate kind");
}

CMatrix circuit_unitary(const GateCircuit& circuit) {
  const Eigen::Index dim = Eigen::Index{1} << circuit.width;
  CMatrix u = CMatrix::Identity(dim, dim);
  for (const Gate& gate : circuit.gates) {
    u = gate_unitary(gate, circuit.width) * u;
  }
  return u;
}

std::string format_circuit(const GateCircuit& circuit) {
  std::string out;
  for (std::size_t g = 0; g < circuit.gates.size(); ++g) {
    if (g > 0) out += ',';
    out += gate_name(circuit.gates[g].kind);
    out += '(';
    for (std::size_t w = 0; w < circuit.gates[g].wires.size(); ++w) {
      if (w > 0) out += ';';
      out += std::to_string(circuit.gates[g].wires[w]);
    }
    out += ')';
  }
  return out;
}

GateCircuit parse_circuit(std::string_view text, int width) {
  GateCircuit circuit;
  circuit.width = width;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t open = text.find('(', pos);
    const std::size_t close = text.find(')', pos);
    if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
      throw Error(Errc::io_error, "malformed circuit text");
    }
    const std::string_view name = text.substr(pos, open - pos);
    Gate gate;
    if (name == "I") gate.kind = GateKind::identity;
    else if (name == "S") gate.kind = GateKind::s;
    else if (name == "K") gate.kind = GateKind::k;
    else if (name == "CNOT") gate.kind = GateKind::cnot;
    else if (name == "TOFFOLI") gate.kind = GateKind::toffoli;
    else throw Error(Errc::io_error, "unknown gate name '" + std::string(name) + "'");

    std::size_t wire_pos = open + 1;
    while (wire_pos < close) {
      std::size_t sep = text.find(';', wire_pos);
      if (sep == std::string_view::npos || sep > close) sep = close;
      gate.wires.push_back(std::stoi(std::string(text.substr(wire_pos, sep - wire_pos))));
      wire_pos = sep + 1;
    }
    check_wires(gate, width);
    circuit.gates.push_back(std::move(gate));
    pos = close + 1;
    if (pos < text.size() && text[pos] == ',') ++pos;
  }
  return circuit;
}

}  // namespace qgen
