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

#include "qham/transpile.hpp"

#include <algorithm>
#include <fstream>
#include <numbers>
#include <queue>
#include <string>

#include "json.hpp"
#include "overloaded.hpp"
#include "qham/errors.hpp"

namespace qham::transpile {

namespace {

constexpr double kPi = std::numbers::pi;

// Ry(t) == SX . Rz(t + pi) . SX . Rz(pi) in application order, up to phase.
void append_ry(std::vector<Gate>& out, Qubit q, double angle) {
  out.emplace_back(gates::SX{q});
  out.emplace_back(gates::Rz{q, angle + kPi});
  out.emplace_back(gates::SX{q});
  out.emplace_back(gates::Rz{q, kPi});
}

}  // namespace

std::vector<Gate> decompose_gate(const Gate& gate) {
  validate_gate(gate);
  std::vector<Gate> out;
  std::visit(detail::overloaded{
                 [&](const gates::Ry& g) { append_ry(out, g.q, g.angle); },
                 [&](const gates::CRy& g) {
                   // CRy(t) = CNOT . Ry(-t/2) . CNOT . Ry(t/2) on the target
                   append_ry(out, g.target, g.angle / 2);
                   out.emplace_back(gates::CNOT{g.control, g.target});
                   append_ry(out, g.target, -g.angle / 2);
                   out.emplace_back(gates::CNOT{g.control, g.target});
                 },
                 [&](const gates::CY& g) {
                   out.emplace_back(gates::Rz{g.target, -kPi / 2});
                   out.emplace_back(gates::CNOT{g.control, g.target});
                   out.emplace_back(gates::Rz{g.target, kPi / 2});
                 },
                 [&](const gates::Swap& g) {
                   out.emplace_back(gates::CNOT{g.a, g.b});
                   out.emplace_back(gates::CNOT{g.b, g.a});
                   out.emplace_back(gates::CNOT{g.a, g.b});
                 },
                 [&](const gates::Measure&) {
                   throw ContractError("measure cannot be decomposed into basis gates");
                 },
                 [&](const gates::Reset&) {
                   throw ContractError("reset cannot be decomposed into basis gates");
                 },
                 [&](const auto& g) { out.emplace_back(g); },
             },
             gate);
  return out;
}

GateCounts& GateCounts::operator+=(const GateCounts& other) {
  total += other.total;
  single_qubit += other.single_qubit;
  cnot += other.cnot;
  return *this;
}

GateCounts count_basis_gates(const Circuit& circuit) {
  GateCounts counts;
  for (const auto& op : circuit.instructions()) {
    if (!is_unitary(op.gate)) continue;
    if (!is_basis_gate(op.gate)) {
      throw ContractError("count_basis_gates: " + gate_name(op.gate) + " is not a basis gate");
    }
    ++counts.total;
    if (std::holds_alternative<gates::CNOT>(op.gate)) {
      ++counts.cnot;
    } else {
      ++counts.single_qubit;
    }
  }
  return counts;
}

TranspileResult transpile_circuit(const Circuit& circuit) {
  Circuit lowered(circuit.qubit_count(), circuit.cbit_count());
  for (const auto& op : circuit.instructions()) {
    if (!is_unitary(op.gate)) {
      lowered.add(op);
      continue;
    }
    for (auto& g : decompose_gate(op.gate)) lowered.add(Instruction{std::move(g), op.condition});
  }
  GateCounts counts = count_basis_gates(lowered);
  return TranspileResult{std::move(lowered), counts};
}

GateCounts predicted_counts_simplified(unsigned n, unsigned u) {
  if (n < 2 || u < 1) throw DomainError("simplified count formula needs n >= 2 and u >= 1");
  const std::uint64_t N = n, U = u;
  return GateCounts{(10 * N - 3) * U, (8 * N - 4) * U, (2 * N + 1) * U};
}

GateCounts predicted_counts_rus(unsigned n, unsigned u, unsigned f) {
  if (n < 2 || u < 1) throw DomainError("RUS count formula needs n >= 2 and u >= 1");
  const std::uint64_t N = n, U = u, F = f;
  return GateCounts{(20 * N * (F + 1) - 4 * F - 5) * U, (16 * N * (F + 1) - F - 5) * U,
                    (4 * N * (F + 1) - 3 * F) * U};
}

void CouplingMap::validate() const {
  for (const auto& [a, b] : edges) {
    if (a >= qubits || b >= qubits) {
      throw ContractError("coupling map edge (" + std::to_string(a) + ", " + std::to_string(b) +
                          ") references a qubit outside 0.." + std::to_string(qubits - 1));
    }
    if (a == b) throw ContractError("coupling map has a self-loop on qubit " + std::to_string(a));
  }
}

bool CouplingMap::adjacent(Qubit a, Qubit b) const {
  return std::any_of(edges.begin(), edges.end(), [&](const auto& e) {
    return (e.first == a && e.second == b) || (e.first == b && e.second == a);
  });
}

namespace {

std::vector<std::vector<Qubit>> adjacency(const CouplingMap& map) {
  std::vector<std::vector<Qubit>> adj(map.qubits);
  for (const auto& [a, b] : map.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());
  return adj;
}

// BFS shortest path from `from` to `to`, inclusive; ties broken by lowest index.
std::vector<Qubit> shortest_path(const std::vector<std::vector<Qubit>>& adj, Qubit from,
                                 Qubit to) {
  std::vector<int> parent(adj.size(), -1);
  std::vector<bool> seen(adj.size(), false);
  std::queue<Qubit> frontier;
  frontier.push(from);
  seen[from] = true;
  while (!frontier.empty()) {
    const Qubit cur = frontier.front();
    frontier.pop();
    if (cur == to) break;
    for (Qubit next : adj[cur]) {
      if (!seen[next]) {
        seen[next] = true;
        parent[next] = static_cast<int>(cur);
        frontier.push(next);
      }
    }
  }
  if (!seen[to]) {
    throw RoutingError("no path between physical qubits " + std::to_string(from) + " and " +
                       std::to_string(to));
  }
  std::vector<Qubit> path{to};
  while (path.back() != from) path.push_back(static_cast<Qubit>(parent[path.back()]));
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

bool CouplingMap::connected() const {
  if (qubits == 0) return true;
  const auto adj = adjacency(*this);
  std::vector<bool> seen(qubits, false);
  std::vector<Qubit> stack{0};
  seen[0] = true;
  unsigned count = 1;
  while (!stack.empty()) {
    const Qubit cur = stack.back();
    stack.pop_back();
    for (Qubit next : adj[cur]) {
      if (!seen[next]) {
        seen[next] = true;
        ++count;
        stack.push_back(next);
      }
    }
  }
  return count == qubits;
}

CouplingMap CouplingMap::line(unsigned qubits) {
  CouplingMap map{qubits, {}};
  for (Qubit q = 0; q + 1 < qubits; ++q) map.edges.emplace_back(q, q + 1);
  return map;
}

CouplingMap CouplingMap::fully_connected(unsigned qubits) {
  CouplingMap map{qubits, {}};
  for (Qubit a = 0; a < qubits; ++a) {
    for (Qubit b = a + 1; b < qubits; ++b) map.edges.emplace_back(a, b);
  }
  return map;
}

CouplingMap CouplingMap::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), "cannot open coupling map file");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string(), e.what());
  }
  if (!doc.contains("qubits") || !doc["qubits"].is_number_unsigned()) {
    throw ConfigError("/qubits", "expected a non-negative integer");
  }
  if (!doc.contains("edges") || !doc["edges"].is_array()) {
    throw ConfigError("/edges", "expected an array of [a, b] pairs");
  }
  CouplingMap map;
  map.qubits = doc["qubits"].get<unsigned>();
  for (std::size_t i = 0; i < doc["edges"].size(); ++i) {
    const auto& e = doc["edges"][i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() ||
        !e[1].is_number_unsigned()) {
      throw ConfigError("/edges/" + std::to_string(i), "expected a pair of qubit indices");
    }
    map.edges.emplace_back(e[0].get<Qubit>(), e[1].get<Qubit>());
  }
  try {
    map.validate();
  } catch (const ContractError& e) {
    throw ConfigError("/edges", e.what());
  }
  return map;
}

RoutedCircuit route(const Circuit& circuit, const CouplingMap& map) {
  map.validate();
  if (circuit.qubit_count() > map.qubits) {
    throw RoutingError("circuit needs " + std::to_string(circuit.qubit_count()) +
                       " qubits but the coupling map has " + std::to_string(map.qubits));
  }
  if (!map.connected()) throw RoutingError("coupling map is disconnected");
  const auto adj = adjacency(map);

  Circuit routed(map.qubits, circuit.cbit_count());
  for (const auto& op : circuit.instructions()) {
    const auto* cx = std::get_if<gates::CNOT>(&op.gate);
    if (cx == nullptr) {
      if (gate_qubits(op.gate).size() > 1) {
        throw ContractError("route expects basis-level input, found " + gate_name(op.gate));
      }
      routed.add(op);
      continue;
    }
    if (map.adjacent(cx->control, cx->target)) {
      routed.add(op);
      continue;
    }
    const auto path = shortest_path(adj, cx->control, cx->target);
    auto emit_swap = [&](Qubit a, Qubit b) {
      routed.add(Instruction{gates::CNOT{a, b}, op.condition});
      routed.add(Instruction{gates::CNOT{b, a}, op.condition});
      routed.add(Instruction{gates::CNOT{a, b}, op.condition});
    };
    // walk the control up to the neighbour of the target, act, walk back
    for (std::size_t i = 0; i + 2 < path.size(); ++i) emit_swap(path[i], path[i + 1]);
    routed.add(Instruction{gates::CNOT{path[path.size() - 2], path.back()}, op.condition});
    for (std::size_t i = path.size() - 2; i-- > 0;) emit_swap(path[i], path[i + 1]);
  }
  std::vector<Qubit> layout(circuit.qubit_count());
  for (Qubit q = 0; q < circuit.qubit_count(); ++q) layout[q] = q;
  return RoutedCircuit{std::move(routed), std::move(layout)};
}

}  // namespace qham::transpile
