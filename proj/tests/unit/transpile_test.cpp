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

#include <filesystem>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "qham/dense.hpp"
#include "qham/errors.hpp"
#include "qham/memory.hpp"
#include "qham/neuron.hpp"
#include "qham/transpile.hpp"

namespace qham::transpile {
namespace {

using std::numbers::pi;

Circuit lowered(const Gate& gate, unsigned qubits) {
  Circuit c(qubits);
  for (const auto& g : decompose_gate(gate)) c.add(g);
  return c;
}

Circuit single(const Gate& gate, unsigned qubits) {
  Circuit c(qubits);
  c.add(gate);
  return c;
}

TEST(Decompose, GenericLengths) {
  EXPECT_EQ(decompose_gate(gates::CRy{0, 1, 0.4}).size(), 10u);
  EXPECT_EQ(decompose_gate(gates::Ry{0, 0.4}).size(), 4u);
  EXPECT_EQ(decompose_gate(gates::CY{0, 1}).size(), 3u);
  EXPECT_EQ(decompose_gate(gates::Rz{0, 0.4}).size(), 1u);
  EXPECT_EQ(decompose_gate(gates::Swap{0, 1}).size(), 3u);
  // The angle-pi shortcut is not taken on the counting path.
  EXPECT_EQ(decompose_gate(gates::CRy{0, 1, pi}).size(), 10u);
}

TEST(Decompose, OutputIsBasisOnly) {
  for (const Gate& g : {Gate{gates::CRy{1, 0, 0.3}}, Gate{gates::Ry{0, 2.0}},
                        Gate{gates::CY{0, 1}}, Gate{gates::Swap{0, 1}}}) {
    for (const auto& b : decompose_gate(g)) EXPECT_TRUE(is_basis_gate(b)) << gate_name(b);
  }
}

TEST(Decompose, RejectsNonUnitary) {
  EXPECT_THROW(decompose_gate(gates::Measure{0, 0}), ContractError);
  EXPECT_THROW(decompose_gate(gates::Reset{0}), ContractError);
}

// 100 random angles for every decomposable gate, both qubit orders.
TEST(Decompose, UnitaryFaithfulUpToGlobalPhase) {
  std::mt19937_64 gen(2026);
  std::uniform_real_distribution<double> angle(-4 * pi, 4 * pi);
  for (int k = 0; k < 100; ++k) {
    const double a = angle(gen);
    const std::vector<Gate> cases = {gates::CRy{0, 1, a}, gates::CRy{1, 0, a}, gates::Ry{0, a},
                                     gates::Ry{1, a},     gates::Rz{0, a},     gates::CY{0, 1},
                                     gates::CY{1, 0},     gates::Swap{0, 1},   gates::CNOT{1, 0}};
    for (const auto& g : cases) {
      EXPECT_LT(distance_up_to_phase(dense_unitary(lowered(g, 2)), dense_unitary(single(g, 2))),
                1e-10)
          << gate_name(g) << " angle " << a;
    }
  }
}

TEST(Counts, PredictedFormulaExamples) {
  EXPECT_EQ(predicted_counts_simplified(4, 1), (GateCounts{37, 28, 9}));
  EXPECT_EQ(predicted_counts_rus(4, 1, 0), (GateCounts{75, 59, 16}));
  EXPECT_EQ(predicted_counts_rus(4, 1, 1), (GateCounts{151, 122, 29}));
  EXPECT_EQ(predicted_counts_rus(2, 1, 0), (GateCounts{35, 27, 8}));
}

memory::WeightMatrix uniform_weights(unsigned n) {
  const std::vector<memory::Pattern> p = {memory::Pattern(n, 1)};
  return memory::hebbian(p);
}

TEST(Counts, SimplifiedRecallMatchesFormula) {
  for (unsigned n = 2; n <= 8; ++n) {
    const auto w = uniform_weights(n);
    for (unsigned u = 1; u <= 4; ++u) {
      for (auto mode : {memory::AncillaMode::FreshAncilla, memory::AncillaMode::ResetReuse}) {
        memory::UpdateSchedule s;
        s.mode = mode;
        for (unsigned k = 0; k < u; ++k) s.targets.push_back((3 * k) % n);
        memory::RecallBuildOptions o;
        o.encode = false;
        o.measure = false;
        const auto rc = memory::build_recall_circuit(memory::ProbeState(n, 1.0), w, s, o);
        EXPECT_EQ(transpile_circuit(rc.circuit).counts, predicted_counts_simplified(n, u))
            << "n=" << n << " u=" << u;
      }
    }
  }
}

TEST(Counts, RusWithForcedFailuresMatchesFormula) {
  for (unsigned n = 2; n <= 8; ++n) {
    const auto w = uniform_weights(n);
    const double gamma = neuron::gamma(w.w_max(), n);
    for (unsigned u = 1; u <= 4; ++u) {
      for (unsigned f = 0; f <= 2; ++f) {
        Circuit c(n + 2);
        for (unsigned k = 0; k < u; ++k) {
          const Qubit t = k % n;
          neuron::append_rus_neuron_unrolled(
              c, neuron::NeuronPlan::for_row(t, w.row(t), gamma, n, n + 1), f);
        }
        EXPECT_EQ(transpile_circuit(c).counts, predicted_counts_rus(n, u, f))
            << "n=" << n << " u=" << u << " f=" << f;
      }
    }
  }
}

TEST(Counts, MeasureAndResetAreNotCounted) {
  Circuit c(1, 1);
  c.add(gates::X{0});
  c.add(gates::Reset{0});
  c.add(gates::Measure{0, 0});
  EXPECT_EQ(transpile_circuit(c).counts, (GateCounts{1, 1, 0}));
}

TEST(Counts, ConditionsFollowLoweredGates) {
  Circuit c(2, 1);
  c.add(gates::Measure{0, 0});
  c.add_if({0, true}, gates::Ry{1, 0.5});
  const auto out = transpile_circuit(c).circuit;
  ASSERT_EQ(out.size(), 5u);
  for (std::size_t i = 1; i < out.size(); ++i) {
    ASSERT_TRUE(out.instructions()[i].condition.has_value());
    EXPECT_EQ(out.instructions()[i].condition->cbit, 0u);
  }
}

// Permutation matrix moving logical qubit l to physical layout[l].
DenseMatrix relabel(const std::vector<Qubit>& layout, unsigned qubits) {
  const std::size_t dim = std::size_t{1} << qubits;
  DenseMatrix p(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    std::size_t j = 0;
    for (unsigned l = 0; l < qubits; ++l) {
      if ((i >> l) & 1) j |= std::size_t{1} << layout[l];
    }
    p(j, i) = 1.0;
  }
  return p;
}

TEST(Route, NonAdjacentCnotOnLine) {
  Circuit c(3);
  c.add(gates::CNOT{0, 2});
  const auto routed = route(c, CouplingMap::line(3));
  EXPECT_EQ(count_basis_gates(routed.circuit).cnot, 7u);
  for (const auto& ins : routed.circuit.instructions()) {
    const auto qs = gate_qubits(ins.gate);
    if (qs.size() == 2) {
      EXPECT_TRUE(CouplingMap::line(3).adjacent(qs[0], qs[1]));
    }
  }
  EXPECT_LT(distance_up_to_phase(dense_unitary(routed.circuit), dense_unitary(c)), 1e-10);
}

TEST(Route, AdjacentAndFullyConnectedAreUnchanged) {
  Circuit c(3);
  c.add(gates::CNOT{0, 1});
  c.add(gates::Rz{2, 0.3});
  EXPECT_EQ(route(c, CouplingMap::line(3)).circuit.size(), c.size());
  Circuit far(4);
  far.add(gates::CNOT{0, 3});
  far.add(gates::CNOT{2, 1});
  EXPECT_EQ(route(far, CouplingMap::fully_connected(4)).circuit.size(), far.size());
}

TEST(Route, RandomCircuitsMatchUpToLayout) {
  std::mt19937_64 gen(5);
  std::uniform_int_distribution<unsigned> pick(0, 3);
  std::uniform_real_distribution<double> angle(-pi, pi);
  const CouplingMap map = CouplingMap::line(4);
  for (int t = 0; t < 30; ++t) {
    Circuit c(4);
    for (int k = 0; k < 10; ++k) {
      const Qubit a = pick(gen);
      Qubit b = pick(gen);
      while (b == a) b = pick(gen);
      c.add(gates::CRy{a, b, angle(gen)});
    }
    const Circuit basis = transpile_circuit(c).circuit;
    const auto routed = route(basis, map);
    const DenseMatrix expected = relabel(routed.final_layout, 4) * dense_unitary(basis);
    EXPECT_LT(distance_up_to_phase(dense_unitary(routed.circuit), expected), 1e-10);
  }
}

TEST(Route, DisconnectedMapThrows) {
  CouplingMap map{4, {{0, 1}, {2, 3}}};
  Circuit c(4);
  c.add(gates::CNOT{0, 3});
  EXPECT_THROW(route(c, map), RoutingError);
}

TEST(CouplingMapFile, MelbourneLoads) {
  const auto map = CouplingMap::load(std::filesystem::path(QHAM_SOURCE_DIR) /
                                     "data/coupling_maps/ibmq_16_melbourne.json");
  EXPECT_EQ(map.qubits, 15u);
  EXPECT_EQ(map.edges.size(), 20u);
  EXPECT_TRUE(map.connected());
  EXPECT_TRUE(map.adjacent(6, 8));
  EXPECT_FALSE(map.adjacent(0, 7));
}

TEST(CouplingMapFile, MissingFileIsConfigError) {
  EXPECT_THROW(CouplingMap::load("/nonexistent/map.json"), ConfigError);
}

}  // namespace
}  // namespace qham::transpile
