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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qham/circuit.hpp"

namespace qham::neuron {

enum class ActivationKind { Simplified, RUS };

std::string to_string(ActivationKind kind);
/// Accepts "simplified" / "rus" (case-insensitive). Throws ContractError.
ActivationKind parse_activation_kind(std::string_view text);

inline constexpr unsigned kDefaultMaxAttempts = 10;

/// (pi/4) / (w_max * n). Throws DegenerateWeightsError when w_max == 0.
double gamma(double w_max, unsigned n);

/// pi/4 - gamma * sum(row).
double beta(std::span<const double> weights_row, double gamma);

/// gamma * theta + pi/4. Results outside [0, pi/2] (beyond rounding) mean
/// the weights were not normalized and raise DomainError.
double phi(double theta, double gamma);

/// sin^2(phi) or sin^4(phi) / (sin^4(phi) + cos^4(phi)) on [0, pi/2].
double activation(ActivationKind kind, double phi);

/// Wiring and angles of one neuron update.
struct NeuronPlan {
  Qubit target = 0;
  Qubit ancilla = 0;              // output qubit, |0> on entry
  std::optional<Qubit> rus_input; // rotated and measured qubit of the RUS design
  std::vector<std::pair<Qubit, double>> controls;
  double gamma = 0.0;
  double beta = 0.0;

  /// Distinct wiring, gamma > 0, and gamma * sum|w| <= pi/4 so that every
  /// classical control setting lands in [0, pi/2]. Throws ContractError.
  void validate() const;

  /// Plan for updating `target` of an n-qubit network from row `target` of a
  /// weight matrix, with every other data qubit as a control.
  static NeuronPlan for_row(Qubit target, std::span<const double> row, double gamma, Qubit ancilla,
                            std::optional<Qubit> rus_input = std::nullopt);
};

/// Ry(2 beta) on the ancilla, CRy(4 gamma w_j) from each control in ascending
/// qubit order, then SWAP(ancilla, target).
void append_simplified_neuron(Circuit& circuit, const NeuronPlan& plan);

/// Same fragment without the final SWAP; the ancilla carries the output.
void append_simplified_rotation(Circuit& circuit, const NeuronPlan& plan);

/// Classical bits written by one RUS update: attempt k lands in first + k.
struct RusRecord {
  Cbit first = 0;
  unsigned attempts = 0;
};

/// Repeat-until-success update. Each attempt rotates the input qubit by
/// Ry(2 phi) through the bias/CRy chain, applies CY(input -> output), Rz(pi/2)
/// on the input, undoes the chain and measures the input. Reading 1 means the
/// output was left in (|0> + |1>)/sqrt(2); the next attempt, guarded on that
/// bit, first rotates it back with Ry(-pi/2) and resets the input. After the
/// attempts the output is swapped onto the target. A shot whose attempt bits
/// are all 1 exhausted `max_attempts` and counts as failed.
RusRecord append_rus_neuron(Circuit& circuit, const NeuronPlan& plan,
                            unsigned max_attempts = kDefaultMaxAttempts);

/// Straight-line RUS update with exactly `failures` failed attempts followed
/// by a successful one (measurements kept, no classical guards). Used for
/// gate accounting.
void append_rus_neuron_unrolled(Circuit& circuit, const NeuronPlan& plan, unsigned failures);

/// One RUS attempt without its measurement.
void append_rus_attempt(Circuit& circuit, const NeuronPlan& plan);

/// True when every attempt bit of `record` reads 1.
bool rus_failed(std::span<const std::uint8_t> bits, const RusRecord& record);

struct RusAttemptStats {
  double success_probability = 0.0;
  double output_p1 = 0.0;  // P(output = 1 | input measured 0)
};

/// Exact statistics of a single attempt after running `prep` (which must
/// be unitary and at least as wide as the plan).
RusAttemptStats rus_attempt_exact(const Circuit& prep, const NeuronPlan& plan);

}  // namespace qham::neuron
