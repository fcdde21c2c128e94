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
#include <span>
#include <vector>

#include "qham/circuit.hpp"
#include "qham/state_vector.hpp"

namespace qham {

inline constexpr unsigned kDenseMaxQubits = 6;

/// Row-major square complex matrix. Small by construction: it backs the
/// dense-unitary oracle only.
class DenseMatrix {
 public:
  explicit DenseMatrix(std::size_t dim);
  static DenseMatrix identity(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

  DenseMatrix operator*(const DenseMatrix& rhs) const;
  std::vector<Complex> operator*(std::span<const Complex> v) const;

 private:
  std::size_t dim_;
  std::vector<Complex> data_;
};

/// Full 2^n x 2^n matrix of one gate on an n-qubit register, built entry by
/// entry from the gate's definition.
DenseMatrix gate_matrix(const Gate& gate, unsigned qubit_count);

/// Product of the full gate matrices in application order. Throws SizeError
/// beyond kDenseMaxQubits and UnsupportedOperationError on Measure/Reset or
/// conditioned instructions.
DenseMatrix dense_unitary(const Circuit& circuit);

/// max |a - e^{i phi} b| over entries, with the phase taken from the largest
/// entry of b.
double distance_up_to_phase(const DenseMatrix& a, const DenseMatrix& b);
double distance_up_to_phase(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace qham
