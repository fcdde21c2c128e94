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

#include "qham/state_vector.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "overloaded.hpp"
#include "qham/errors.hpp"

namespace qham {

namespace {

// Index of the i-th basis state whose bit `q` is clear.
inline std::size_t insert_zero(std::size_t i, unsigned q) {
  const std::size_t low = i & ((std::size_t{1} << q) - 1);
  return ((i >> q) << (q + 1)) | low;
}

// Index of the i-th basis state whose bits `lo` < `hi` are both clear.
inline std::size_t insert_two_zeros(std::size_t i, unsigned lo, unsigned hi) {
  return insert_zero(insert_zero(i, lo), hi);
}

// Calls f(i0, i1) for every index pair differing only in bit `q`, walking
// contiguous runs so the inner loop vectorizes.
template <typename F>
inline void for_each_pair(std::size_t size, unsigned q, F&& f) {
  const std::size_t bit = std::size_t{1} << q;
  for (std::size_t base = 0; base < size; base += 2 * bit) {
    for (std::size_t i0 = base; i0 < base + bit; ++i0) f(i0, i0 | bit);
  }
}

}  // namespace

StateVector::StateVector(unsigned qubit_count, unsigned max_qubits) : qubits_(qubit_count) {
  if (qubit_count < 1 || qubit_count > max_qubits) {
    throw SizeError("state of " + std::to_string(qubit_count) +
                    " qubits outside the supported range [1, " + std::to_string(max_qubits) +
                    "]");
  }
  amps_.assign(std::size_t{1} << qubit_count, Complex{0.0, 0.0});
  amps_[0] = 1.0;
}

StateVector init_state(unsigned qubit_count, unsigned max_qubits) {
  return StateVector(qubit_count, max_qubits);
}

void StateVector::check_qubit(Qubit q) const {
  if (q >= qubits_) {
    throw ContractError("qubit " + std::to_string(q) + " out of range for a " +
                        std::to_string(qubits_) + "-qubit state");
  }
}

void StateVector::apply(const Gate& gate) {
  validate_gate(gate);
  for (Qubit q : gate_qubits(gate)) check_qubit(q);
  std::visit(detail::overloaded{
                 [&](const gates::X& g) { apply_x(g.q); },
                 [&](const gates::SX& g) {
                   const Complex a{0.5, 0.5}, b{0.5, -0.5};
                   const Complex m[4] = {a, b, b, a};
                   apply_1q(g.q, m);
                 },
                 [](const gates::Id&) {},
                 [&](const gates::Rz& g) { apply_rz(g.q, g.angle); },
                 [&](const gates::Ry& g) { apply_ry(g.q, g.angle); },
                 [&](const gates::CNOT& g) { apply_cnot(g.control, g.target); },
                 [&](const gates::CRy& g) { apply_controlled_ry(g.control, g.target, g.angle); },
                 [&](const gates::CY& g) { apply_cy(g.control, g.target); },
                 [&](const gates::Swap& g) { apply_swap(g.a, g.b); },
                 [&](const gates::Measure&) {
                   throw UnsupportedOperationError(
                       "measure is not unitary; execute it through run_shot");
                 },
                 [&](const gates::Reset&) {
                   throw UnsupportedOperationError(
                       "reset is not unitary; execute it through run_shot");
                 },
             },
             gate);
}

void StateVector::apply_1q(Qubit q, const Complex m[4]) {
  for_each_pair(amps_.size(), q, [&](std::size_t i0, std::size_t i1) {
    const Complex a0 = amps_[i0];
    const Complex a1 = amps_[i1];
    amps_[i0] = m[0] * a0 + m[1] * a1;
    amps_[i1] = m[2] * a0 + m[3] * a1;
  });
}

void StateVector::apply_x(Qubit q) {
  for_each_pair(amps_.size(), q,
                [&](std::size_t i0, std::size_t i1) { std::swap(amps_[i0], amps_[i1]); });
}

void StateVector::apply_rz(Qubit q, double angle) {
  const Complex lo = std::polar(1.0, -angle / 2);
  const Complex hi = std::polar(1.0, angle / 2);
  const std::size_t bit = std::size_t{1} << q;
  for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] *= (i & bit) ? hi : lo;
}

void StateVector::apply_ry(Qubit q, double angle) {
  const double c = std::cos(angle / 2);
  const double s = std::sin(angle / 2);
  for_each_pair(amps_.size(), q, [&](std::size_t i0, std::size_t i1) {
    const Complex a0 = amps_[i0];
    const Complex a1 = amps_[i1];
    amps_[i0] = c * a0 - s * a1;
    amps_[i1] = s * a0 + c * a1;
  });
}

void StateVector::apply_controlled_ry(Qubit control, Qubit target, double angle) {
  const double c = std::cos(angle / 2);
  const double s = std::sin(angle / 2);
  const std::size_t cbit = std::size_t{1} << control;
  const std::size_t tbit = std::size_t{1} << target;
  const unsigned lo = control < target ? control : target;
  const unsigned hi = control < target ? target : control;
  const std::size_t quarter = amps_.size() / 4;
  for (std::size_t i = 0; i < quarter; ++i) {
    const std::size_t i0 = insert_two_zeros(i, lo, hi) | cbit;
    const Complex a0 = amps_[i0];
    const Complex a1 = amps_[i0 | tbit];
    amps_[i0] = c * a0 - s * a1;
    amps_[i0 | tbit] = s * a0 + c * a1;
  }
}

void StateVector::apply_cnot(Qubit control, Qubit target) {
  const std::size_t cbit = std::size_t{1} << control;
  const std::size_t tbit = std::size_t{1} << target;
  const unsigned lo = control < target ? control : target;
  const unsigned hi = control < target ? target : control;
  const std::size_t quarter = amps_.size() / 4;
  for (std::size_t i = 0; i < quarter; ++i) {
    const std::size_t i0 = insert_two_zeros(i, lo, hi) | cbit;
    std::swap(amps_[i0], amps_[i0 | tbit]);
  }
}

void StateVector::apply_cy(Qubit control, Qubit target) {
  // Y = [[0, -i], [i, 0]]
  const std::size_t cbit = std::size_t{1} << control;
  const std::size_t tbit = std::size_t{1} << target;
  const unsigned lo = control < target ? control : target;
  const unsigned hi = control < target ? target : control;
  const std::size_t quarter = amps_.size() / 4;
  const Complex i_unit{0.0, 1.0};
  for (std::size_t i = 0; i < quarter; ++i) {
    const std::size_t i0 = insert_two_zeros(i, lo, hi) | cbit;
    const Complex a0 = amps_[i0];
    const Complex a1 = amps_[i0 | tbit];
    amps_[i0] = -i_unit * a1;
    amps_[i0 | tbit] = i_unit * a0;
  }
}

void StateVector::apply_swap(Qubit a, Qubit b) {
  const std::size_t abit = std::size_t{1} << a;
  const std::size_t bbit = std::size_t{1} << b;
  const unsigned lo = a < b ? a : b;
  const unsigned hi = a < b ? b : a;
  const std::size_t quarter = amps_.size() / 4;
  for (std::size_t i = 0; i < quarter; ++i) {
    const std::size_t i0 = insert_two_zeros(i, lo, hi);
    std::swap(amps_[i0 | abit], amps_[i0 | bbit]);
  }
}

void StateVector::apply_pauli(Qubit q, unsigned pauli) {
  check_qubit(q);
  switch (pauli) {
    case 0:
      return;
    case 1:
      apply_x(q);
      return;
    case 2: {
      const Complex i_unit{0.0, 1.0};
      const Complex m[4] = {0.0, -i_unit, i_unit, 0.0};
      apply_1q(q, m);
      return;
    }
    case 3: {
      const std::size_t bit = std::size_t{1} << q;
      for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (i & bit) amps_[i] = -amps_[i];
      }
      return;
    }
    default:
      throw ContractError("pauli index " + std::to_string(pauli) + " not in 0..3");
  }
}

double StateVector::prob_one(Qubit q) const {
  check_qubit(q);
  double p = 0.0;
  for_each_pair(amps_.size(), q, [&](std::size_t, std::size_t i1) { p += std::norm(amps_[i1]); });
  return p > 1.0 ? 1.0 : p;
}

double StateVector::project(Qubit q, bool outcome) {
  const double p1 = prob_one(q);
  const double p = outcome ? p1 : 1.0 - p1;
  if (!(p > 0.0)) {
    throw DomainError("cannot project qubit " + std::to_string(q) +
                      " onto a zero-probability outcome");
  }
  const std::size_t bit = std::size_t{1} << q;
  const double inv = 1.0 / std::sqrt(p);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    const bool set = (i & bit) != 0;
    amps_[i] = (set == outcome) ? amps_[i] * inv : Complex{0.0, 0.0};
  }
  return p;
}

void StateVector::amplitude_damp(Qubit q, double gamma, bool jump) {
  amplitude_damp(q, gamma, jump, prob_one(q));
}

void StateVector::amplitude_damp(Qubit q, double gamma, bool jump, double p1) {
  check_qubit(q);
  // squared norm after the Kraus operator: gamma p1 (K1) or 1 - gamma p1 (K0)
  const double kept = jump ? gamma * p1 : 1.0 - gamma * p1;
  if (!(kept > 0.0)) throw DomainError("amplitude damping produced a null state");
  if (jump) {
    const double f = std::sqrt(gamma / kept);
    for_each_pair(amps_.size(), q, [&](std::size_t i0, std::size_t i1) {
      amps_[i0] = f * amps_[i1];
      amps_[i1] = 0.0;
    });
  } else {
    const double f0 = 1.0 / std::sqrt(kept);
    const double f1 = std::sqrt((1.0 - gamma) / kept);
    for_each_pair(amps_.size(), q, [&](std::size_t i0, std::size_t i1) {
      amps_[i0] *= f0;
      amps_[i1] *= f1;
    });
  }
}

void StateVector::scale(double factor) {
  for (auto& a : amps_) a *= factor;
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

double prob_one(const StateVector& state, Qubit q) { return state.prob_one(q); }

}  // namespace qham
