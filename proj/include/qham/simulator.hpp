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
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qham/circuit.hpp"
#include "qham/noise.hpp"
#include "qham/rng.hpp"
#include "qham/state_vector.hpp"

namespace qham {

/// Bitstring -> shot count. Keys list classical bits cbit-0-first.
using Counts = std::map<std::string, std::uint64_t>;

struct ShotOutcome {
  std::vector<std::uint8_t> bits;
  /// P(|1>) per qubit of the state reached before the closing measurements.
  std::vector<double> final_marginals;
};

/// A group of shots that followed one trajectory to the end of the circuit.
/// `state` is the state on entry to the closing block of measurements (or
/// the final state when the circuit does not end in one).
struct Leaf {
  const StateVector& state;
  std::span<const std::uint8_t> bits;
  std::uint64_t shots;
};

using LeafVisitor = std::function<void(const Leaf&)>;

/// Runs `shots` trajectories of `circuit` from `initial` with shared prefixes:
/// every random event (measurement, reset, sampled error) splits the current
/// shot group by a binomial/multinomial draw instead of being resolved shot by
/// shot, so the result is distributed exactly as independent shots. The
/// closing measurement block is resolved classically per shot. Output is a
/// deterministic function of (circuit, initial, shots, rng state, noise).
void execute(const Circuit& circuit, const StateVector& initial, std::uint64_t shots, Rng& rng,
             const noise::NoiseSpec* noise, const LeafVisitor& on_leaf);

/// Observes shot groups as they reach given instruction indices (the
/// checkpoint fires before that instruction runs; index == size() means the
/// end of the circuit). Every shot passes each checkpoint exactly once.
/// Indices past the first instruction of the closing measurement block raise
/// ContractError: that block is resolved classically and has no state.
struct Checkpoints {
  std::vector<std::size_t> at;
  std::function<void(std::size_t index, const Leaf&)> visit;
};

void execute(const Circuit& circuit, const StateVector& initial, std::uint64_t shots, Rng& rng,
             const noise::NoiseSpec* noise, const LeafVisitor& on_leaf,
             const Checkpoints& checkpoints);

/// One trajectory. Measure samples and collapses, Reset measures then flips
/// to |0>, noise (when given) is interleaved after every gate.
ShotOutcome run_shot(const Circuit& circuit, Rng& rng, const noise::NoiseSpec* noise = nullptr,
                     unsigned max_qubits = kDefaultMaxQubits);

/// Histogram of `shots` runs. A circuit without classical bits is measured
/// on every qubit at the end and keyed by qubit-0-first bitstrings.
Counts sample_counts(const Circuit& circuit, std::uint64_t shots, std::uint64_t seed,
                     const noise::NoiseSpec* noise = nullptr,
                     unsigned max_qubits = kDefaultMaxQubits);

/// Final statevector of a measurement-free circuit applied to |0...0>.
StateVector simulate_unitary(const Circuit& circuit, unsigned max_qubits = kDefaultMaxQubits);

std::string to_bitstring(std::span<const std::uint8_t> bits);

}  // namespace qham
