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

#include "qham/circuit.hpp"

#include <cmath>

#include "overloaded.hpp"
#include "qham/errors.hpp"

namespace qham {

using detail::overloaded;

std::string gate_name(const Gate& gate) {
  return std::visit(
      overloaded{
          [](const gates::X&) { return std::string("x"); },
          [](const gates::SX&) { return std::string("sx"); },
          [](const gates::Id&) { return std::string("id"); },
          [](const gates::Rz&) { return std::string("rz"); },
          [](const gates::Ry&) { return std::string("ry"); },
          [](const gates::CNOT&) { return std::string("cx"); },
          [](const gates::CRy&) { return std::string("cry"); },
          [](const gates::CY&) { return std::string("cy"); },
          [](const gates::Swap&) { return std::string("swap"); },
          [](const gates::Measure&) { return std::string("measure"); },
          [](const gates::Reset&) { return std::string("reset"); },
      },
      gate);
}

std::vector<Qubit> gate_qubits(const Gate& gate) {
  return std::visit(
      overloaded{
          [](const gates::CNOT& g) { return std::vector<Qubit>{g.control, g.target}; },
          [](const gates::CRy& g) { return std::vector<Qubit>{g.control, g.target}; },
          [](const gates::CY& g) { return std::vector<Qubit>{g.control, g.target}; },
          [](const gates::Swap& g) { return std::vector<Qubit>{g.a, g.b}; },
          [](const auto& g) { return std::vector<Qubit>{g.q}; },
      },
      gate);
}

bool is_unitary(const Gate& gate) {
  return !std::holds_alternative<gates::Measure>(gate) &&
         !std::holds_alternative<gates::Reset>(gate);
}

bool is_basis_gate(const Gate& gate) {
  return std::holds_alternative<gates::CNOT>(gate) ||
         std::holds_alternative<gates::Id>(gate) ||
         std::holds_alternative<gates::Rz>(gate) ||
         std::holds_alternative<gates::SX>(gate) ||
         std::holds_alternative<gates::X>(gate);
}

void validate_gate(const Gate& gate) {
  const auto qubits = gate_qubits(gate);
  if (qubits.size() == 2 && qubits[0] == qubits[1]) {
    throw ContractError(gate_name(gate) + ": both operands are qubit " +
                        std::to_string(qubits[0]));
  }
  const bool finite = std::visit(
      overloaded{
          [](const gates::Rz& g) { return std::isfinite(g.angle); },
          [](const gates::Ry& g) { return std::isfinite(g.angle); },
          [](const gates::CRy& g) { return std::isfinite(g.angle); },
          [](const auto&) { return true; },
      },
      gate);
  if (!finite) throw ContractError(gate_name(gate) + ": angle is not finite");
}

Circuit::Circuit(unsigned qubit_count, unsigned cbit_count)
    : qubit_count_(qubit_count), cbit_count_(cbit_count) {}

void Circuit::check(const Instruction& instruction) const {
  validate_gate(instruction.gate);
  for (Qubit q : gate_qubits(instruction.gate)) {
    if (q >= qubit_count_) {
      throw ContractError(gate_name(instruction.gate) + ": qubit " + std::to_string(q) +
                          " out of range for a " + std::to_string(qubit_count_) +
                          "-qubit circuit");
    }
  }
  if (const auto* m = std::get_if<gates::Measure>(&instruction.gate)) {
    if (m->cbit >= cbit_count_) {
      throw ContractError("measure: cbit " + std::to_string(m->cbit) + " out of range");
    }
  }
  if (instruction.condition && instruction.condition->cbit >= cbit_count_) {
    throw ContractError("condition on cbit " + std::to_string(instruction.condition->cbit) +
                        " out of range");
  }
}

Circuit& Circuit::add(Gate gate) { return add(Instruction{std::move(gate), std::nullopt}); }

Circuit& Circuit::add_if(Condition condition, Gate gate) {
  return add(Instruction{std::move(gate), condition});
}

Circuit& Circuit::add(Instruction instruction) {
  check(instruction);
  ops_.push_back(std::move(instruction));
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  if (other.qubit_count_ > qubit_count_ || other.cbit_count_ > cbit_count_) {
    throw ContractError("append: fragment is wider than the target circuit");
  }
  ops_.insert(ops_.end(), other.ops_.begin(), other.ops_.end());
  return *this;
}

Cbit Circuit::allocate_cbits(unsigned count) {
  const Cbit first = cbit_count_;
  cbit_count_ += count;
  return first;
}

bool Circuit::has_nonunitary() const {
  for (const auto& op : ops_) {
    if (!is_unitary(op.gate)) return true;
  }
  return false;
}

}  // namespace qham
