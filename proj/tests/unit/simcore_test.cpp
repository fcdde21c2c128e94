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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "qham/dense.hpp"
#include "qham/errors.hpp"
#include "qham/simulator.hpp"

namespace qham {
namespace {

using std::numbers::pi;

Gate random_gate(std::mt19937_64& gen, unsigned qubits) {
  std::uniform_int_distribution<unsigned> kind(0, 8);
  std::uniform_int_distribution<unsigned> pick(0, qubits - 1);
  std::uniform_real_distribution<double> angle(-2 * pi, 2 * pi);
  const Qubit a = pick(gen);
  Qubit b = pick(gen);
  while (b == a) b = pick(gen);
  switch (kind(gen)) {
    case 0: return gates::X{a};
    case 1: return gates::SX{a};
    case 2: return gates::Id{a};
    case 3: return gates::Rz{a, angle(gen)};
    case 4: return gates::Ry{a, angle(gen)};
    case 5: return gates::CNOT{a, b};
    case 6: return gates::CRy{a, b, angle(gen)};
    case 7: return gates::CY{a, b};
    default: return gates::Swap{a, b};
  }
}

TEST(StateVector, StartsInGroundState) {
  StateVector s(3);
  EXPECT_EQ(s.dimension(), 8u);
  EXPECT_DOUBLE_EQ(std::norm(s.amplitudes()[0]), 1.0);
  EXPECT_NEAR(s.norm(), 1.0, 1e-15);
}

TEST(StateVector, RejectsBadWidths) {
  EXPECT_THROW(StateVector(0), SizeError);
  EXPECT_THROW(StateVector(27), SizeError);
  EXPECT_THROW(StateVector(5, 4), SizeError);
}

TEST(StateVector, QubitZeroIsLeastSignificant) {
  StateVector s(3);
  s.apply(gates::X{0});
  EXPECT_DOUBLE_EQ(std::norm(s.amplitudes()[1]), 1.0);
  s.apply(gates::X{2});
  EXPECT_DOUBLE_EQ(std::norm(s.amplitudes()[5]), 1.0);
}

TEST(StateVector, RyGivesSinSquaredHalfAngle) {
  for (double theta : {0.0, 0.3, pi / 2, 2.0, pi}) {
    StateVector s(1);
    s.apply(gates::Ry{0, theta});
    EXPECT_NEAR(s.prob_one(0), std::pow(std::sin(theta / 2), 2), 1e-14);
  }
}

TEST(StateVector, CRyActsOnlyWhenControlIsSet) {
  StateVector off(2);
  off.apply(gates::CRy{0, 1, 1.2});
  EXPECT_NEAR(off.prob_one(1), 0.0, 1e-15);
  StateVector on(2);
  on.apply(gates::X{0});
  on.apply(gates::CRy{0, 1, 1.2});
  EXPECT_NEAR(on.prob_one(1), std::pow(std::sin(0.6), 2), 1e-14);
}

// Random circuits on up to 5 qubits against the entry-by-entry dense oracle.
TEST(StateVector, MatchesDenseOracle) {
  std::mt19937_64 gen(12345);
  for (int trial = 0; trial < 200; ++trial) {
    const unsigned n = 2 + trial % 4;
    Circuit c(n);
    for (int k = 0; k < 12; ++k) c.add(random_gate(gen, n));
    const StateVector s = simulate_unitary(c);
    const DenseMatrix u = dense_unitary(c);
    for (std::size_t i = 0; i < s.dimension(); ++i) {
      EXPECT_NEAR(std::abs(s.amplitudes()[i] - u(i, 0)), 0.0, 1e-12);
    }
    EXPECT_NEAR(s.norm(), 1.0, 1e-12);
  }
}

TEST(StateVector, ProjectCollapsesAndRenormalizes) {
  StateVector s(2);
  s.apply(gates::Ry{0, pi / 3});
  s.apply(gates::CNOT{0, 1});
  const double p = s.project(0, true);
  EXPECT_NEAR(p, 0.25, 1e-14);
  EXPECT_NEAR(s.prob_one(1), 1.0, 1e-14);
  EXPECT_NEAR(s.norm(), 1.0, 1e-14);
}

TEST(StateVector, AmplitudeDampingJumpAndNoJump) {
  StateVector jump(1);
  jump.apply(gates::X{0});
  jump.amplitude_damp(0, 0.3, true);
  EXPECT_NEAR(jump.prob_one(0), 0.0, 1e-15);

  // No jump on (|0> + |1>)/sqrt2: weights 1 and 1-g, renormalized.
  StateVector keep(1);
  keep.apply(gates::Ry{0, pi / 2});
  keep.amplitude_damp(0, 0.3, false);
  EXPECT_NEAR(keep.prob_one(0), 0.7 / 1.7, 1e-14);
  EXPECT_NEAR(keep.norm(), 1.0, 1e-14);
}

TEST(StateVector, RejectsNonUnitaryInApply) {
  StateVector s(1);
  EXPECT_THROW(s.apply(gates::Measure{0, 0}), UnsupportedOperationError);
  EXPECT_THROW(s.apply(gates::Reset{0}), UnsupportedOperationError);
}

TEST(Circuit, ValidatesGates) {
  Circuit c(2);
  EXPECT_THROW(c.add(gates::CNOT{0, 0}), ContractError);
  EXPECT_THROW(c.add(gates::Swap{1, 1}), ContractError);
  EXPECT_THROW(c.add(gates::X{2}), ContractError);
  EXPECT_THROW(c.add(gates::Ry{0, std::nan("")}), ContractError);
  EXPECT_THROW(c.add(gates::Measure{0, 3}), ContractError);
}

TEST(Simulator, SimulateUnitaryRejectsMeasurement) {
  Circuit c(1, 1);
  c.add(gates::Measure{0, 0});
  EXPECT_THROW(simulate_unitary(c), UnsupportedOperationError);
}

TEST(Simulator, BellStateCountsAreCorrelated) {
  Circuit c(2);
  c.add(gates::Ry{0, pi / 2});
  c.add(gates::CNOT{0, 1});
  const Counts counts = sample_counts(c, 4000, 7);
  std::uint64_t total = 0;
  for (const auto& [key, n] : counts) {
    EXPECT_TRUE(key == "00" || key == "11") << key;
    total += n;
  }
  EXPECT_EQ(total, 4000u);
  EXPECT_NEAR(static_cast<double>(counts.at("11")) / 4000, 0.5, 4 * std::sqrt(0.25 / 4000));
}

TEST(Simulator, BitstringsListCbitZeroFirst) {
  Circuit c(2, 2);
  c.add(gates::X{0});
  c.add(gates::Measure{0, 0});
  c.add(gates::Measure{1, 1});
  const Counts counts = sample_counts(c, 10, 1);
  ASSERT_EQ(counts.size(), 1u);
  EXPECT_EQ(counts.begin()->first, "10");
}

TEST(Simulator, ResetReturnsQubitToZero) {
  Circuit c(1, 1);
  c.add(gates::Ry{0, 1.0});
  c.add(gates::Reset{0});
  c.add(gates::Measure{0, 0});
  EXPECT_EQ(sample_counts(c, 500, 3).at("0"), 500u);
}

TEST(Simulator, MidCircuitMeasurementCollapses) {
  // Measure q0 mid-circuit, copy it onto q1 with a CNOT, measure both: the
  // two bits always agree.
  Circuit c(2, 3);
  c.add(gates::Ry{0, 1.1});
  c.add(gates::Measure{0, 0});
  c.add(gates::CNOT{0, 1});
  c.add(gates::Measure{0, 1});
  c.add(gates::Measure{1, 2});
  for (const auto& [key, n] : sample_counts(c, 2000, 5)) {
    EXPECT_TRUE(key == "000" || key == "111") << key;
  }
}

TEST(Simulator, ClassicalConditionGuardsInstruction) {
  Circuit c(2, 2);
  c.add(gates::Ry{0, pi / 2});
  c.add(gates::Measure{0, 0});
  c.add_if({0, true}, gates::X{1});
  c.add(gates::Measure{1, 1});
  for (const auto& [key, n] : sample_counts(c, 2000, 9)) {
    EXPECT_EQ(key[0], key[1]) << key;
  }
}

TEST(Simulator, SeededRunsAreIdentical) {
  Circuit c(3);
  c.add(gates::Ry{0, 0.7});
  c.add(gates::CRy{0, 1, 2.1});
  c.add(gates::Ry{2, 1.9});
  const auto spec = noise::NoiseSpec::for_device("ibmq_16_melbourne");
  EXPECT_EQ(sample_counts(c, 3000, 42, &spec), sample_counts(c, 3000, 42, &spec));
  EXPECT_EQ(sample_counts(c, 3000, 42), sample_counts(c, 3000, 42));
  EXPECT_NE(sample_counts(c, 3000, 42), sample_counts(c, 3000, 43));
}

// The branching executor and the shot-by-shot reference agree in
// distribution on a circuit with mid-circuit measurement and resets.
TEST(Simulator, ExecutorMatchesShotByShotReference) {
  Circuit c(2, 3);
  c.add(gates::Ry{0, 1.3});
  c.add(gates::CRy{0, 1, 2.2});
  c.add(gates::Measure{1, 0});
  c.add(gates::Reset{1});
  c.add_if({0, true}, gates::Ry{1, 0.9});
  c.add(gates::Measure{0, 1});
  c.add(gates::Measure{1, 2});
  const std::uint64_t shots = 20000;
  const Counts fast = sample_counts(c, shots, 11);
  Counts slow;
  Rng rng(99);
  for (std::uint64_t s = 0; s < shots; ++s) slow[to_bitstring(run_shot(c, rng).bits)] += 1;
  for (const auto& [key, n] : slow) {
    const double p = static_cast<double>(n) / shots;
    const double q = fast.contains(key) ? static_cast<double>(fast.at(key)) / shots : 0.0;
    EXPECT_NEAR(p, q, 5 * std::sqrt(2 * p * (1 - p) / shots) + 1e-9) << key;
  }
}

TEST(Simulator, CheckpointsSeeEveryShotOnce) {
  Circuit c(2, 2);
  c.add(gates::Ry{0, 1.0});
  c.add(gates::Measure{0, 0});
  c.add(gates::Ry{1, 2.0});
  c.add(gates::Measure{1, 1});
  std::map<std::size_t, std::uint64_t> seen;
  Checkpoints cp{{0, 2, 3}, [&](std::size_t at, const Leaf& leaf) { seen[at] += leaf.shots; }};
  Rng rng(1);
  std::uint64_t leaves = 0;
  execute(c, StateVector(2), 777, rng, nullptr, [&](const Leaf& l) { leaves += l.shots; }, cp);
  EXPECT_EQ(leaves, 777u);
  EXPECT_EQ(seen[0], 777u);
  EXPECT_EQ(seen[2], 777u);
  EXPECT_EQ(seen[3], 777u);

  Checkpoints late{{4}, cp.visit};
  EXPECT_THROW(execute(c, StateVector(2), 10, rng, nullptr, [](const Leaf&) {}, late),
               ContractError);
}

TEST(Simulator, NoiseLowersFidelityOfIdentityLikeCircuit) {
  Circuit c(2);
  for (int k = 0; k < 20; ++k) {
    c.add(gates::CNOT{0, 1});
  }
  const auto spec = noise::NoiseSpec::for_device("ibmq_16_melbourne");
  const Counts clean = sample_counts(c, 5000, 2);
  const Counts noisy = sample_counts(c, 5000, 2, &spec);
  EXPECT_EQ(clean.at("00"), 5000u);
  EXPECT_LT(noisy.at("00"), 5000u);
}

}  // namespace
}  // namespace qham
