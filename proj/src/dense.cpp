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

#include "qham/dense.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "overloaded.hpp"
#include "qham/errors.hpp"

namespace qham {

namespace {

using Mat2 = std::array<Complex, 4>;  // row-major

const Complex kI{0.0, 1.0};

Mat2 ry_matrix(double angle) {
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  return {c, -s, s, c};
}

bool bit(std::size_t index, Qubit q) { return (index >> q) & 1U; }

// <r| U_q |c> for a single-qubit U embedded at q.
Complex single_entry(const Mat2& u, Qubit q, std::size_t r, std::size_t c) {
  const std::size_t mask = std::size_t{1} << q;
  if ((r & ~mask) != (c & ~mask)) return 0.0;
  return u[bit(r, q) * 2 + bit(c, q)];
}

Complex controlled_entry(const Mat2& u, Qubit control, Qubit target, std::size_t r,
                         std::size_t c) {
  if (!bit(c, control)) return r == c ? Complex{1.0} : Complex{0.0};
  if (!bit(r, control)) return 0.0;
  return single_entry(u, target, r, c);
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, Complex{0.0}) {}

DenseMatrix DenseMatrix::identity(std::size_t dim) {
  DenseMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::operator*(const DenseMatrix& rhs) const {
  if (rhs.dim_ != dim_) throw ContractError("matrix dimension mismatch");
  DenseMatrix out(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t k = 0; k < dim_; ++k) {
      const Complex a = (*this)(r, k);
      if (a == Complex{0.0}) continue;
      for (std::size_t c = 0; c < dim_; ++c) out(r, c) += a * rhs(k, c);
    }
  }
  return out;
}

std::vector<Complex> DenseMatrix::operator*(std::span<const Complex> v) const {
  if (v.size() != dim_) throw ContractError("vector dimension mismatch");
  std::vector<Complex> out(dim_, Complex{0.0});
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) out[r] += (*this)(r, c) * v[c];
  }
  return out;
}

DenseMatrix gate_matrix(const Gate& gate, unsigned qubit_count) {
  validate_gate(gate);
  for (Qubit q : gate_qubits(gate)) {
    if (q >= qubit_count) throw ContractError("gate qubit out of range for dense matrix");
  }
  const std::size_t dim = std::size_t{1} << qubit_count;
  DenseMatrix m(dim);
  const double h = 1.0 / std::sqrt(2.0);
  auto fill = [&](auto entry) {
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) m(r, c) = entry(r, c);
    }
  };
  std::visit(
      detail::overloaded{
          [&](const gates::X& g) {
            const Mat2 u{0.0, 1.0, 1.0, 0.0};
            fill([&](auto r, auto c) { return single_entry(u, g.q, r, c); });
          },
          [&](const gates::SX& g) {
            // sqrt(X) = e^{i pi/4} Rx(pi/2)
            const Complex ph = std::polar(1.0, std::numbers::pi / 4);
            const Mat2 u{ph * h, ph * (-kI * h), ph * (-kI * h), ph * h};
            fill([&](auto r, auto c) { return single_entry(u, g.q, r, c); });
          },
          [&](const gates::Id&) { m = DenseMatrix::identity(dim); },
          [&](const gates::Rz& g) {
            const Mat2 u{std::exp(-kI * (g.angle / 2)), 0.0, 0.0, std::exp(kI * (g.angle / 2))};
            fill([&](auto r, auto c) { return single_entry(u, g.q, r, c); });
          },
          [&](const gates::Ry& g) {
            const Mat2 u = ry_matrix(g.angle);
            fill([&](auto r, auto c) { return single_entry(u, g.q, r, c); });
          },
          [&](const gates::CNOT& g) {
            const Mat2 u{0.0, 1.0, 1.0, 0.0};
            fill([&](auto r, auto c) { return controlled_entry(u, g.control, g.target, r, c); });
          },
          [&](const gates::CRy& g) {
            const Mat2 u = ry_matrix(g.angle);
            fill([&](auto r, auto c) { return controlled_entry(u, g.control, g.target, r, c); });
          },
          [&](const gates::CY& g) {
            const Mat2 u{0.0, -kI, kI, 0.0};
            fill([&](auto r, auto c) { return controlled_entry(u, g.control, g.target, r, c); });
          },
          [&](const gates::Swap& g) {
            fill([&](std::size_t r, std::size_t c) {
              std::size_t swapped = c & ~((std::size_t{1} << g.a) | (std::size_t{1} << g.b));
              if (bit(c, g.a)) swapped |= std::size_t{1} << g.b;
              if (bit(c, g.b)) swapped |= std::size_t{1} << g.a;
              return r == swapped ? Complex{1.0} : Complex{0.0};
            });
          },
          [&](const gates::Measure&) {
            throw UnsupportedOperationError("measure has no unitary matrix");
          },
          [&](const gates::Reset&) {
            throw UnsupportedOperationError("reset has no unitary matrix");
          },
      },
      gate);
  return m;
}

DenseMatrix dense_unitary(const Circuit& circuit) {
  if (circuit.qubit_count() > kDenseMaxQubits) {
    throw SizeError("dense unitary limited to " + std::to_string(kDenseMaxQubits) +
                    " qubits, circuit has " + std::to_string(circuit.qubit_count()));
  }
  const std::size_t dim = std::size_t{1} << circuit.qubit_count();
  DenseMatrix u = DenseMatrix::identity(dim);
  for (const auto& op : circuit.instructions()) {
    if (op.condition) throw UnsupportedOperationError("conditioned instruction in dense unitary");
    u = gate_matrix(op.gate, circuit.qubit_count()) * u;
  }
  return u;
}

double distance_up_to_phase(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw ContractError("size mismatch in phase comparison");
  std::size_t pivot = 0;
  for (std::size_t i = 1; i < b.size(); ++i) {
    if (std::abs(b[i]) > std::abs(b[pivot])) pivot = i;
  }
  Complex phase{1.0};
  if (std::abs(b[pivot]) > 0.0 && std::abs(a[pivot]) > 0.0) {
    phase = a[pivot] / b[pivot];
    phase /= std::abs(phase);
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - phase * b[i]));
  return worst;
}

double distance_up_to_phase(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.dim() != b.dim()) throw ContractError("size mismatch in phase comparison");
  std::vector<Complex> fa, fb;
  fa.reserve(a.dim() * a.dim());
  fb.reserve(a.dim() * a.dim());
  for (std::size_t r = 0; r < a.dim(); ++r) {
    for (std::size_t c = 0; c < a.dim(); ++c) {
      fa.push_back(a(r, c));
      fb.push_back(b(r, c));
    }
  }
  return distance_up_to_phase(std::span<const Complex>(fa), std::span<const Complex>(fb));
}

}  // namespace qham
