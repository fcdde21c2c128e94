// Copyright 2026 The QHAM Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include "qham/circuit.hpp"

namespace qham::transpile {

/// Lowers one gate to the hardware basis {CNOT, ID, Rz, SX, X}. The sequence
/// equals the gate up to global phase and has the generic-angle length:
/// CRy 10, Ry 4, CY 3, Rz 1, SWAP 3; basis gates pass through unchanged.
/// Measure/Reset raise ContractError.
std::vector<Gate> decompose_gate(const Gate& gate);

struct GateCounts {
  std::uint64_t total = 0;
  std::uint64_t single_qubit = 0;
  std::uint64_t cnot = 0;

  GateCounts& operator+=(const GateCounts& other);
  friend bool operator==(const GateCounts&, const GateCounts&) = default;
};

/// Counts the unitary basis gates of an already lowered circuit. Measure and
/// Reset are not counted.
GateCounts count_basis_gates(const Circuit& circuit);

struct TranspileResult {
  Circuit circuit;
  GateCounts counts;
};

/// Concatenates the decompositions of every instruction; Measure/Reset pass
/// through uncounted and classical conditions are copied onto each lowered
/// gate.
TranspileResult transpile_circuit(const Circuit& circuit);

/// (10n-3)u total, (8n-4)u single-qubit, (2n+1)u CNOT for u updates of the
/// simplified neuron with its SWAP. Requires n >= 2 and u >= 1.
GateCounts predicted_counts_simplified(unsigned n, unsigned u);

/// [20n(f+1)-4f-5]u total, [16n(f+1)-f-5]u single-qubit, [4n(f+1)-3f]u CNOT
/// for the repeat-until-success neuron with f failures per update.
GateCounts predicted_counts_rus(unsigned n, unsigned u, unsigned f);

/// Undirected hardware connectivity.
struct CouplingMap {
  unsigned qubits = 0;
  std::vector<std::pair<Qubit, Qubit>> edges;

  /// Throws ContractError on out-of-range endpoints or self-loops.
  void validate() const;
  bool adjacent(Qubit a, Qubit b) const;
  bool connected() const;

  static CouplingMap line(unsigned qubits);
  static CouplingMap fully_connected(unsigned qubits);
  /// Reads {"qubits": k, "edges": [[a, b], ...]}.
  static CouplingMap load(const std::filesystem::path& path);
};

struct RoutedCircuit {
  Circuit circuit;
  /// final_layout[logical] = physical qubit holding it at the end.
  std::vector<Qubit> final_layout;
};

/// Naive shortest-path router: every non-adjacent CNOT is preceded by a SWAP
/// chain bringing the control next to the target and followed by the reverse
/// chain, each SWAP lowered to three CNOTs. Input must be basis-level.
/// Throws RoutingError when the map is disconnected.
RoutedCircuit route(const Circuit& circuit, const CouplingMap& map);

}  // namespace qham::transpile
