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

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qham {

using Qubit = unsigned;
using Cbit = unsigned;

namespace gates {

struct X { Qubit q; };
struct SX { Qubit q; };
struct Id { Qubit q; };
struct Rz { Qubit q; double angle; };
struct Ry { Qubit q; double angle; };
struct CNOT { Qubit control; Qubit target; };
struct CRy { Qubit control; Qubit target; double angle; };
struct CY { Qubit control; Qubit target; };
struct Swap { Qubit a; Qubit b; };
struct Measure { Qubit q; Cbit cbit; };
struct Reset { Qubit q; };

}  // namespace gates

using Gate = std::variant<gates::X, gates::SX, gates::Id, gates::Rz, gates::Ry,
                          gates::CNOT, gates::CRy, gates::CY, gates::Swap,
                          gates::Measure, gates::Reset>;

std::string gate_name(const Gate& gate);

/// Qubits the gate touches, control first for controlled gates.
std::vector<Qubit> gate_qubits(const Gate& gate);

/// False only for Measure and Reset.
bool is_unitary(const Gate& gate);

/// Member of the hardware basis {CNOT, ID, Rz, SX, X}.
bool is_basis_gate(const Gate& gate);

/// Throws ContractError when control == target, SWAP operands coincide or an
/// angle is not finite.
void validate_gate(const Gate& gate);

/// Classical guard: the instruction runs only when `cbit` currently reads `value`.
struct Condition {
  Cbit cbit;
  bool value;
};

struct Instruction {
  Gate gate;
  std::optional<Condition> condition;
};

/// Ordered list of gate applications on a fixed-width quantum register and a
/// growable classical register (cbits start at 0 every shot).
class Circuit {
 public:
  explicit Circuit(unsigned qubit_count, unsigned cbit_count = 0);

  unsigned qubit_count() const noexcept { return qubit_count_; }
  unsigned cbit_count() const noexcept { return cbit_count_; }
  const std::vector<Instruction>& instructions() const noexcept { return ops_; }
  std::size_t size() const noexcept { return ops_.size(); }
  bool empty() const noexcept { return ops_.empty(); }

  Circuit& add(Gate gate);
  Circuit& add_if(Condition condition, Gate gate);
  Circuit& add(Instruction instruction);

  /// Appends `other`, which must not be wider than this circuit.
  Circuit& append(const Circuit& other);

  /// Reserves `count` fresh classical bits and returns the first index.
  Cbit allocate_cbits(unsigned count);

  /// True when any Measure or Reset instruction is present.
  bool has_nonunitary() const;

 private:
  void check(const Instruction& instruction) const;

  unsigned qubit_count_;
  unsigned cbit_count_;
  std::vector<Instruction> ops_;
};

}  // namespace qham
