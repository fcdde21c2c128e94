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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "qham/circuit.hpp"

namespace qham {

using Complex = std::complex<double>;

inline constexpr unsigned kDefaultMaxQubits = 26;

/// Dense statevector of 2^n amplitudes. Qubit 0 is the least-significant bit
/// of the amplitude index.
class StateVector {
 public:
  /// |0...0> on `qubit_count` qubits; throws SizeError outside [1, max_qubits].
  explicit StateVector(unsigned qubit_count, unsigned max_qubits = kDefaultMaxQubits);

  unsigned qubit_count() const noexcept { return qubits_; }
  std::size_t dimension() const noexcept { return amps_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  std::span<Complex> amplitudes() noexcept { return amps_; }

  /// Applies a unitary gate in place. Measure/Reset raise
  /// UnsupportedOperationError.
  void apply(const Gate& gate);

  /// Pauli by index 1=X, 2=Y, 3=Z (0 is identity).
  void apply_pauli(Qubit q, unsigned pauli);

  double prob_one(Qubit q) const;

  /// Collapses qubit `q` onto `outcome` and renormalizes. Returns the
  /// probability the outcome had before collapse.
  double project(Qubit q, bool outcome);

  /// Amplitude-damping Kraus operators on `q`: K1 = sqrt(g)|0><1| when
  /// `jump`, else K0 = diag(1, sqrt(1-g)); the result is renormalized.
  void amplitude_damp(Qubit q, double gamma, bool jump);
  /// Same with P(|1>) on `q` already known.
  void amplitude_damp(Qubit q, double gamma, bool jump, double p1);

  double norm() const;

 private:
  void check_qubit(Qubit q) const;
  void apply_1q(Qubit q, const Complex m[4]);
  void apply_ry(Qubit q, double angle);
  void apply_controlled_ry(Qubit control, Qubit target, double angle);
  void apply_x(Qubit q);
  void apply_cnot(Qubit control, Qubit target);
  void apply_cy(Qubit control, Qubit target);
  void apply_swap(Qubit a, Qubit b);
  void apply_rz(Qubit q, double angle);
  void scale(double factor);

  unsigned qubits_;
  std::vector<Complex> amps_;
};

/// Ground state |0...0>.
StateVector init_state(unsigned qubit_count, unsigned max_qubits = kDefaultMaxQubits);

/// Sum of |amplitude|^2 over basis states with bit q set.
double prob_one(const StateVector& state, Qubit q);

}  // namespace qham
