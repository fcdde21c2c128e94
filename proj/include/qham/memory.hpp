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
#include <vector>

#include "qham/circuit.hpp"
#include "qham/neuron.hpp"
#include "qham/noise.hpp"
#include "qham/rng.hpp"
#include "qham/simulator.hpp"

namespace qham::memory {

/// Stored memory, entries +1 / -1.
using Pattern = std::vector<int>;
/// Network state in [-1, 1]; 0 encodes an unknown bit as an equal superposition.
using ProbeState = std::vector<double>;

/// Throws ContractError unless non-empty with every entry +1 or -1.
void validate_pattern(const Pattern& pattern);
void validate_probe(std::span<const double> probe);
ProbeState to_probe(const Pattern& pattern);

/// Symmetric n x n coupling matrix with zero diagonal, row-major.
class WeightMatrix {
 public:
  explicit WeightMatrix(unsigned n);
  /// Throws ContractError if `values` is not n*n, not symmetric or has a
  /// non-zero diagonal.
  WeightMatrix(unsigned n, std::vector<double> values);

  unsigned size() const noexcept { return n_; }
  double operator()(unsigned i, unsigned j) const { return w_[i * n_ + j]; }
  std::span<const double> row(unsigned i) const { return {w_.data() + i * n_, n_}; }
  const std::vector<double>& values() const noexcept { return w_; }

  /// Sets w_ij and w_ji.
  void set(unsigned i, unsigned j, double value);

  /// max |w_ij| over i != j.
  double w_max() const;

 private:
  unsigned n_;
  std::vector<double> w_;
};

/// w_ij = (1/m) sum_mu e_i e_j for i != j, w_ii = 0.
WeightMatrix hebbian(std::span<const Pattern> patterns);

/// Ry(2 (x_i pi/4 + pi/4)) on qubit i, taking |0> to
/// cos(x_i pi/4 + pi/4)|0> + sin(x_i pi/4 + pi/4)|1>.
void append_encoding(Circuit& circuit, std::span<const double> probe);
Circuit encode(std::span<const double> probe);

/// +1 if sum_j w_ij x_j > h else -1 (ties go to -1).
int classical_update(std::span<const double> x, const WeightMatrix& w, unsigned i, double h = 0.0);

/// -1/2 sum_ij w_ij x_i x_j + sum_i h_i x_i; an empty `h` means all zero.
double energy(std::span<const double> x, const WeightMatrix& w, std::span<const double> h = {});

enum class AncillaMode { FreshAncilla, ResetReuse };

std::string to_string(AncillaMode mode);
/// Accepts "fresh" / "reset" (and the enum spellings). Throws ContractError.
AncillaMode parse_ancilla_mode(std::string_view text);

struct UpdateSchedule {
  std::vector<Qubit> targets;
  AncillaMode mode = AncillaMode::FreshAncilla;

  void validate(unsigned n) const;
  /// `u` targets drawn uniformly with replacement from [0, n).
  static UpdateSchedule random(unsigned n, unsigned u, Rng& rng,
                               AncillaMode mode = AncillaMode::ResetReuse);
};

/// Register width for n data qubits and u updates: n + 1 when the ancilla is
/// reset and reused, n + u with a fresh ancilla per update. The RUS neuron
/// needs two work qubits per update (n + 2 / n + 2u).
unsigned qubit_overhead(unsigned n, unsigned u, AncillaMode mode,
                        neuron::ActivationKind kind = neuron::ActivationKind::Simplified);

struct RecallBuildOptions {
  neuron::ActivationKind kind = neuron::ActivationKind::Simplified;
  unsigned max_attempts = neuron::kDefaultMaxAttempts;
  bool encode = true;   // prepend the probe encoding
  bool measure = true;  // measure data qubit i into cbit i at the end
  /// Replaces gamma(w_max, n); needed only when every weight is zero.
  std::optional<double> gamma;
};

struct RecallCircuit {
  Circuit circuit;
  unsigned data_qubits = 0;
  std::vector<neuron::RusRecord> rus;  // one per update for the RUS neuron
  bool mid_circuit_measurement = false;
  /// Instruction index where the state after k updates is complete, for
  /// k = 0..u (entry 0 follows the encoding).
  std::vector<std::size_t> after_update;
};

/// Encoding, one neuron update per scheduled target (controls are all other
/// data qubits, weights from row w_i, gamma from w_max), and the final data
/// measurement. A reused ancilla is reset before it is needed again.
RecallCircuit build_recall_circuit(std::span<const double> probe, const WeightMatrix& w,
                                   const UpdateSchedule& schedule,
                                   const RecallBuildOptions& options = {});

struct RecallOptions {
  std::uint64_t shots = 1024;
  std::uint64_t seed = 0;
  const noise::NoiseSpec* noise = nullptr;
  neuron::ActivationKind kind = neuron::ActivationKind::Simplified;
  unsigned max_attempts = neuron::kDefaultMaxAttempts;
  unsigned max_qubits = kDefaultMaxQubits;
  std::optional<double> gamma;  // see RecallBuildOptions::gamma
};

struct RecallResult {
  std::vector<double> per_qubit_p1;
  Counts counts;  // data-qubit bitstrings of the successful shots
  std::vector<std::uint8_t> majority_vote;
  std::uint64_t shots = 0;
  std::uint64_t failed_shots = 0;  // RUS shots that ran out of attempts
  double mean_failures = 0.0;      // failed RUS attempts per update, over successful shots
  bool exact_marginals = false;
  unsigned qubits = 0;
};

/// Runs the recall circuit. P(|1>) comes from the final statevector when the
/// run is noiseless and has no mid-circuit measurement, otherwise from the
/// sampled shots; the majority vote always comes from the shots.
/// Throws SizeError when the register exceeds options.max_qubits.
RecallResult run_recall(std::span<const double> probe, const WeightMatrix& w,
                        const UpdateSchedule& schedule, const RecallOptions& options);

/// Bit i is 1 iff more than half of the shots read 1 (ties give 0).
std::vector<std::uint8_t> majority_vote(std::span<const std::uint64_t> ones, std::uint64_t shots);
std::vector<std::uint8_t> majority_vote(const Counts& counts, std::uint64_t shots);

/// Mean over i of p1_i where target_i = +1 and 1 - p1_i where it is -1.
double density_accuracy(std::span<const double> per_qubit_p1, const Pattern& target);

/// Pattern entry +1 <-> bit 1.
std::vector<std::uint8_t> to_bits(const Pattern& pattern);

}  // namespace qham::memory
