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

#include "qham/neuron.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <set>

#include "qham/errors.hpp"
#include "qham/simulator.hpp"

namespace qham::neuron {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kQuarterPi = kPi / 4;
constexpr double kSlack = 1e-12;  // rounding allowance at the interval ends

}  // namespace

std::string to_string(ActivationKind kind) {
  return kind == ActivationKind::Simplified ? "simplified" : "rus";
}

ActivationKind parse_activation_kind(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "simplified") return ActivationKind::Simplified;
  if (lower == "rus") return ActivationKind::RUS;
  throw ContractError("unknown neuron kind '" + std::string(text) + "' (simplified|rus)");
}

double gamma(double w_max, unsigned n) {
  if (n < 1) throw DomainError("gamma needs n >= 1");
  if (!std::isfinite(w_max) || w_max < 0.0) throw DomainError("w_max must be finite and >= 0");
  if (w_max == 0.0) {
    throw DegenerateWeightsError("all off-diagonal weights are zero; gamma is undefined");
  }
  return kQuarterPi / (w_max * n);
}

double beta(std::span<const double> weights_row, double gamma) {
  double sum = 0.0;
  for (double w : weights_row) {
    if (!std::isfinite(w)) throw DomainError("weight row has a non-finite entry");
    sum += w;
  }
  return kQuarterPi - gamma * sum;
}

double phi(double theta, double gamma) {
  const double value = gamma * theta + kQuarterPi;
  if (!(value >= -kSlack && value <= kPi / 2 + kSlack)) {
    throw DomainError("phi = " + std::to_string(value) +
                      " outside [0, pi/2]: weights violate the gamma normalization");
  }
  return std::clamp(value, 0.0, kPi / 2);
}

double activation(ActivationKind kind, double phi) {
  if (!(phi >= 0.0 && phi <= kPi / 2)) throw DomainError("activation needs phi in [0, pi/2]");
  const double s2 = std::sin(phi) * std::sin(phi);
  if (kind == ActivationKind::Simplified) return s2;
  const double c2 = std::cos(phi) * std::cos(phi);
  return s2 * s2 / (s2 * s2 + c2 * c2);
}

void NeuronPlan::validate() const {
  std::set<Qubit> used{target};
  auto claim = [&](Qubit q, const char* role) {
    if (!used.insert(q).second) {
      throw ContractError(std::string("neuron plan: ") + role + " qubit " + std::to_string(q) +
                          " collides with another role");
    }
  };
  claim(ancilla, "ancilla");
  if (rus_input) claim(*rus_input, "RUS input");
  double spread = 0.0;
  for (const auto& [q, w] : controls) {
    claim(q, "control");
    if (!std::isfinite(w)) throw ContractError("neuron plan: non-finite control weight");
    spread += std::abs(w);
  }
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ContractError("neuron plan: gamma must be > 0");
  if (!std::isfinite(beta)) throw ContractError("neuron plan: beta must be finite");
  if (gamma * spread > kQuarterPi + kSlack) {
    throw ContractError("neuron plan: gamma * sum|w| exceeds pi/4; weights exceed w_max");
  }
}

NeuronPlan NeuronPlan::for_row(Qubit target, std::span<const double> row, double gamma,
                               Qubit ancilla, std::optional<Qubit> rus_input) {
  NeuronPlan plan;
  plan.target = target;
  plan.ancilla = ancilla;
  plan.rus_input = rus_input;
  plan.gamma = gamma;
  for (Qubit j = 0; j < row.size(); ++j) {
    if (j != target) plan.controls.emplace_back(j, row[j]);
  }
  std::vector<double> off_diagonal;
  for (const auto& c : plan.controls) off_diagonal.push_back(c.second);
  plan.beta = neuron::beta(off_diagonal, gamma);
  return plan;
}

namespace {

std::vector<std::pair<Qubit, double>> sorted_controls(const NeuronPlan& plan) {
  auto controls = plan.controls;
  std::sort(controls.begin(), controls.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return controls;
}

// Ry(2 beta) then CRy(4 gamma w_j) onto `on`, or the exact inverse.
void append_chain(Circuit& c, const NeuronPlan& plan, Qubit on, bool inverse) {
  const auto controls = sorted_controls(plan);
  if (!inverse) {
    c.add(gates::Ry{on, 2 * plan.beta});
    for (const auto& [q, w] : controls) c.add(gates::CRy{q, on, 4 * plan.gamma * w});
  } else {
    for (auto it = controls.rbegin(); it != controls.rend(); ++it) {
      c.add(gates::CRy{it->first, on, -4 * plan.gamma * it->second});
    }
    c.add(gates::Ry{on, -2 * plan.beta});
  }
}

Qubit rus_input_of(const NeuronPlan& plan) {
  if (!plan.rus_input) throw ContractError("RUS neuron plan needs an input qubit");
  return *plan.rus_input;
}

// Guarded copy of `fragment` appended to `c`.
void append_guarded(Circuit& c, const Circuit& fragment, std::optional<Condition> guard) {
  for (const auto& op : fragment.instructions()) c.add(Instruction{op.gate, guard});
}

Circuit attempt_body(const NeuronPlan& plan, unsigned width, bool retry, Cbit cbit) {
  const Qubit input = rus_input_of(plan);
  Circuit body(width, cbit + 1);
  if (retry) {
    body.add(gates::Ry{plan.ancilla, -kPi / 2});
    body.add(gates::Reset{input});
  }
  append_rus_attempt(body, plan);
  body.add(gates::Measure{input, cbit});
  return body;
}

}  // namespace

void append_simplified_rotation(Circuit& circuit, const NeuronPlan& plan) {
  plan.validate();
  append_chain(circuit, plan, plan.ancilla, false);
}

void append_simplified_neuron(Circuit& circuit, const NeuronPlan& plan) {
  append_simplified_rotation(circuit, plan);
  circuit.add(gates::Swap{plan.ancilla, plan.target});
}

void append_rus_attempt(Circuit& circuit, const NeuronPlan& plan) {
  plan.validate();
  const Qubit input = rus_input_of(plan);
  append_chain(circuit, plan, input, false);
  circuit.add(gates::CY{input, plan.ancilla});
  circuit.add(gates::Rz{input, kPi / 2});
  append_chain(circuit, plan, input, true);
}

RusRecord append_rus_neuron(Circuit& circuit, const NeuronPlan& plan, unsigned max_attempts) {
  if (max_attempts < 1) throw ContractError("RUS neuron needs max_attempts >= 1");
  plan.validate();
  rus_input_of(plan);
  const RusRecord record{circuit.allocate_cbits(max_attempts), max_attempts};
  for (unsigned k = 0; k < max_attempts; ++k) {
    const Cbit bit = record.first + k;
    const auto body = attempt_body(plan, circuit.qubit_count(), k > 0, bit);
    std::optional<Condition> guard;
    if (k > 0) guard = Condition{bit - 1, true};
    append_guarded(circuit, body, guard);
  }
  circuit.add(gates::Swap{plan.ancilla, plan.target});
  return record;
}

void append_rus_neuron_unrolled(Circuit& circuit, const NeuronPlan& plan, unsigned failures) {
  plan.validate();
  rus_input_of(plan);
  const Cbit first = circuit.allocate_cbits(failures + 1);
  for (unsigned k = 0; k <= failures; ++k) {
    append_guarded(circuit, attempt_body(plan, circuit.qubit_count(), k > 0, first + k),
                   std::nullopt);
  }
  circuit.add(gates::Swap{plan.ancilla, plan.target});
}

bool rus_failed(std::span<const std::uint8_t> bits, const RusRecord& record) {
  for (unsigned k = 0; k < record.attempts; ++k) {
    if (bits[record.first + k] == 0) return false;
  }
  return true;
}

RusAttemptStats rus_attempt_exact(const Circuit& prep, const NeuronPlan& plan) {
  Circuit c(prep.qubit_count());
  c.append(prep);
  append_rus_attempt(c, plan);
  StateVector state = simulate_unitary(c);
  RusAttemptStats stats;
  stats.success_probability = state.project(rus_input_of(plan), false);
  stats.output_p1 = state.prob_one(plan.ancilla);
  return stats;
}

}  // namespace qham::neuron
