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

#include "qham/errors.hpp"
#include "qham/memory.hpp"

namespace qham::memory {
namespace {

using std::numbers::pi;

const std::vector<Pattern> kComplementary = {{-1, 1, 1, -1}, {1, -1, -1, 1}};
const ProbeState kCorrupted = {-1, 1, 0, -1};

TEST(Hebbian, SymmetricZeroDiagonalForRandomSets) {
  std::mt19937_64 gen(1);
  for (unsigned n = 2; n <= 12; ++n) {
    for (unsigned m = 1; m <= 12; m += 3) {
      std::vector<Pattern> ps(m, Pattern(n));
      for (auto& p : ps) {
        for (auto& e : p) e = (gen() & 1) ? 1 : -1;
      }
      const auto w = hebbian(ps);
      for (unsigned i = 0; i < n; ++i) {
        EXPECT_EQ(w(i, i), 0.0);
        for (unsigned j = 0; j < n; ++j) EXPECT_EQ(w(i, j), w(j, i));
      }
      EXPECT_LE(w.w_max(), 1.0);
    }
  }
}

TEST(Hebbian, ComplementaryPairGivesOuterProduct) {
  const auto w = hebbian(kComplementary);
  EXPECT_EQ(w(2, 0), -1.0);
  EXPECT_EQ(w(2, 1), 1.0);
  EXPECT_EQ(w(2, 3), -1.0);
  EXPECT_EQ(w.w_max(), 1.0);
}

TEST(WeightMatrix, RejectsAsymmetricOrDiagonal) {
  EXPECT_THROW(WeightMatrix(2, {0, 1, 0.5, 0}), ContractError);
  EXPECT_THROW(WeightMatrix(2, {1, 0, 0, 0}), ContractError);
  EXPECT_THROW(WeightMatrix(2, {0, 0, 0}), ContractError);
}

TEST(Classical, UpdateRule) {
  WeightMatrix ones(4);
  for (unsigned i = 0; i < 4; ++i) {
    for (unsigned j = i + 1; j < 4; ++j) ones.set(i, j, 1.0);
  }
  EXPECT_EQ(classical_update(std::vector<double>{0, 1, 1, 1}, ones, 0), 1);
  // theta == h goes to -1
  EXPECT_EQ(classical_update(std::vector<double>{0, 1, 1, 1}, ones, 0, 3.0), -1);
  WeightMatrix neg(2);
  neg.set(0, 1, -1.0);
  EXPECT_EQ(classical_update(std::vector<double>{0, 1}, neg, 0), -1);
}

TEST(Classical, Energy) {
  WeightMatrix w(2);
  w.set(0, 1, 1.0);
  EXPECT_DOUBLE_EQ(energy(std::vector<double>{1, 1}, w), -1.0);
  EXPECT_DOUBLE_EQ(energy(std::vector<double>{1, -1}, w), 1.0);
  const std::vector<double> h = {0.5, -2.0};
  EXPECT_DOUBLE_EQ(energy(std::vector<double>{1, -1}, WeightMatrix(2), h), 2.5);
}

TEST(Classical, SweepsNeverRaiseEnergyAndStoreSinglePattern) {
  std::mt19937_64 gen(4);
  for (int t = 0; t < 50; ++t) {
    const unsigned n = 3 + t % 6;
    Pattern p(n);
    for (auto& e : p) e = (gen() & 1) ? 1 : -1;
    const std::vector<Pattern> ps = {p};
    const auto w = hebbian(ps);
    std::vector<double> x(n);
    for (auto& e : x) e = (gen() & 1) ? 1.0 : -1.0;
    double e = energy(x, w);
    for (int sweep = 0; sweep < 5; ++sweep) {
      for (unsigned i = 0; i < n; ++i) {
        x[i] = classical_update(x, w, i);
        const double next = energy(x, w);
        EXPECT_LE(next, e + 1e-12);
        e = next;
      }
    }
    // The stored pattern and its complement are fixed points.
    std::vector<double> s(p.begin(), p.end()), c(n);
    for (unsigned i = 0; i < n; ++i) c[i] = -s[i];
    for (unsigned i = 0; i < n; ++i) {
      EXPECT_EQ(classical_update(s, w, i), p[i]);
      EXPECT_EQ(classical_update(c, w, i), -p[i]);
    }
  }
}

TEST(Encoding, ProbeToAmplitudes) {
  const auto s = simulate_unitary(encode(std::vector<double>{1, -1, 0, 0.5}));
  EXPECT_NEAR(s.prob_one(0), 1.0, 1e-15);
  EXPECT_NEAR(s.prob_one(1), 0.0, 1e-15);
  EXPECT_NEAR(s.prob_one(2), 0.5, 1e-15);
  EXPECT_NEAR(s.prob_one(3), std::pow(std::sin(pi / 8 + pi / 4), 2), 1e-15);
  EXPECT_THROW(encode(std::vector<double>{1.5}), ContractError);
}

TEST(Encoding, MajorityVoteReturnsClassicalProbe) {
  const Pattern p = {1, -1, -1, 1, 1};
  const auto w = hebbian(std::vector<Pattern>{p});
  RecallOptions o;
  o.shots = 101;
  const auto r = run_recall(to_probe(p), w, UpdateSchedule{}, o);
  EXPECT_EQ(r.majority_vote, to_bits(p));
}

TEST(Recall, CorruptedQubitSingleUpdate) {
  const auto w = hebbian(kComplementary);
  UpdateSchedule s;
  s.targets = {2};
  RecallOptions o;
  o.shots = 8192;
  for (auto mode : {AncillaMode::FreshAncilla, AncillaMode::ResetReuse}) {
    s.mode = mode;
    const auto r = run_recall(kCorrupted, w, s, o);
    ASSERT_TRUE(r.exact_marginals);
    EXPECT_NEAR(r.per_qubit_p1[0], 0.0, 1e-12);
    EXPECT_NEAR(r.per_qubit_p1[1], 1.0, 1e-12);
    EXPECT_NEAR(r.per_qubit_p1[2], 0.9619397662556434, 1e-12);
    EXPECT_NEAR(r.per_qubit_p1[3], 0.0, 1e-12);
    EXPECT_EQ(r.majority_vote, (std::vector<std::uint8_t>{0, 1, 1, 0}));
    EXPECT_NEAR(density_accuracy(r.per_qubit_p1, kComplementary[0]), 0.9904849415639109, 1e-12);
  }
}

TEST(Recall, EmptyScheduleOnlyEncodes) {
  RecallOptions o;
  o.shots = 100;
  const auto r = run_recall(kCorrupted, hebbian(kComplementary), UpdateSchedule{}, o);
  EXPECT_NEAR(r.per_qubit_p1[2], 0.5, 1e-15);
  EXPECT_NEAR(r.per_qubit_p1[1], 1.0, 1e-15);
}

TEST(Recall, TwoQubitSingleControl) {
  const auto w = hebbian(std::vector<Pattern>{{1, 1}});
  UpdateSchedule s;
  s.targets = {1};
  RecallOptions o;
  o.shots = 10;
  const auto r = run_recall(std::vector<double>{1, 0}, w, s, o);
  EXPECT_NEAR(r.per_qubit_p1[1], 0.8535533905932737, 1e-12);
}

TEST(Recall, DegenerateWeightsPropagate) {
  UpdateSchedule s;
  s.targets = {0};
  EXPECT_THROW(run_recall(std::vector<double>{1, 1}, WeightMatrix(2), s, RecallOptions{}),
               DegenerateWeightsError);
}

TEST(Recall, BudgetExceededIsSizeError) {
  const auto w = hebbian(std::vector<Pattern>{Pattern(10, 1)});
  UpdateSchedule s;
  s.mode = AncillaMode::FreshAncilla;
  s.targets.assign(20, 0);
  RecallOptions o;
  o.max_qubits = 20;
  EXPECT_THROW(run_recall(ProbeState(10, 1.0), w, s, o), SizeError);
}

// For classical probes the sign of P(1) - 1/2 after one update agrees with
// the classical rule, exhaustively for n <= 6.
TEST(Recall, SingleUpdateMatchesClassicalSign) {
  std::mt19937_64 gen(6);
  for (unsigned n = 2; n <= 6; ++n) {
    std::vector<Pattern> ps(2, Pattern(n));
    for (auto& p : ps) {
      for (auto& e : p) e = (gen() & 1) ? 1 : -1;
    }
    const auto w = hebbian(ps);
    if (w.w_max() == 0.0) continue;
    for (unsigned bits = 0; bits < (1u << n); ++bits) {
      ProbeState x(n);
      for (unsigned i = 0; i < n; ++i) x[i] = (bits >> i) & 1 ? 1.0 : -1.0;
      for (unsigned i = 0; i < n; ++i) {
        double theta = 0.0;
        for (unsigned j = 0; j < n; ++j) theta += w(i, j) * x[j];
        if (theta == 0.0) continue;  // P(1) = 1/2 exactly, classical rule gives -1
        UpdateSchedule s;
        s.targets = {i};
        RecallOptions o;
        o.shots = 1;
        const double p1 = run_recall(x, w, s, o).per_qubit_p1[i];
        EXPECT_EQ(p1 > 0.5 ? 1 : -1, classical_update(x, w, i)) << "n=" << n << " i=" << i;
      }
    }
  }
}

TEST(Recall, FreshAndResetAgreeStatistically) {
  const std::vector<Pattern> ps = {{1, -1, 1, -1, 1}, {1, 1, -1, -1, 1}};
  const auto w = hebbian(ps);
  UpdateSchedule s;
  s.targets = {2, 0, 2, 4};
  RecallOptions o;
  o.shots = 10000;
  o.seed = 3;
  const ProbeState probe = {1, 0, 1, -1, 0.5};
  s.mode = AncillaMode::FreshAncilla;
  const auto fresh = run_recall(probe, w, s, o);
  s.mode = AncillaMode::ResetReuse;
  const auto reset = run_recall(probe, w, s, o);
  ASSERT_TRUE(fresh.exact_marginals);
  ASSERT_FALSE(reset.exact_marginals);
  for (unsigned q = 0; q < 5; ++q) {
    const double p = fresh.per_qubit_p1[q];
    EXPECT_NEAR(reset.per_qubit_p1[q], p, 3 * std::sqrt(p * (1 - p) / o.shots) + 1e-12) << q;
  }
}

TEST(Recall, DoubleUpdateDoesNotLowerUpdatedQubits) {
  const std::vector<Pattern> ps = {{1, -1, 1, -1, 1, -1, 1, -1, 1},
                                   {-1, 1, -1, 1, 1, 1, -1, 1, -1}};
  const auto w = hebbian(ps);
  const ProbeState probe = {1, -1, 0, -1, 1, -1, 0, -1, 1};
  RecallOptions o;
  o.shots = 10000;
  UpdateSchedule once;
  once.targets = {2, 6};
  UpdateSchedule twice;
  twice.targets = {2, 6, 2, 6};
  const auto a = run_recall(probe, w, once, o);
  const auto b = run_recall(probe, w, twice, o);
  for (unsigned q : {2u, 6u}) {
    EXPECT_GE(b.per_qubit_p1[q], a.per_qubit_p1[q] - 1e-12);
  }
}

TEST(Schedule, RandomIsUniformWithReplacement) {
  Rng rng(10);
  const auto s = UpdateSchedule::random(5, 20000, rng);
  std::vector<int> hist(5);
  for (auto t : s.targets) ++hist[t];
  for (int h : hist) EXPECT_NEAR(h / 20000.0, 0.2, 0.02);
  EXPECT_EQ(s.mode, AncillaMode::ResetReuse);
  UpdateSchedule bad;
  bad.targets = {5};
  EXPECT_THROW(bad.validate(5), ContractError);
}

TEST(Overhead, QubitCounts) {
  EXPECT_EQ(qubit_overhead(4, 1, AncillaMode::FreshAncilla), 5u);
  EXPECT_EQ(qubit_overhead(10, 16, AncillaMode::FreshAncilla), 26u);
  EXPECT_EQ(qubit_overhead(10, 16, AncillaMode::ResetReuse), 11u);
  for (unsigned n = 1; n <= 16; ++n) {
    for (unsigned u = 0; u <= 16; ++u) {
      EXPECT_EQ(qubit_overhead(n, u, AncillaMode::FreshAncilla), n + u);
      EXPECT_EQ(qubit_overhead(n, u, AncillaMode::ResetReuse), n + 1);
    }
  }
}

TEST(Scoring, MajorityVote) {
  EXPECT_EQ(majority_vote(std::vector<std::uint64_t>{600}, 1024), (std::vector<std::uint8_t>{1}));
  EXPECT_EQ(majority_vote(std::vector<std::uint64_t>{512}, 1024), (std::vector<std::uint8_t>{0}));
  EXPECT_EQ(majority_vote(std::vector<std::uint64_t>{100, 900}, 1000),
            (std::vector<std::uint8_t>{0, 1}));
  const Counts counts = {{"01", 6}, {"11", 3}, {"00", 1}};
  EXPECT_EQ(majority_vote(counts, 10), (std::vector<std::uint8_t>{0, 1}));
}

TEST(Scoring, DensityAccuracy) {
  EXPECT_DOUBLE_EQ(density_accuracy(std::vector<double>{0.9, 1.0}, Pattern{-1, 1}), 0.55);
  EXPECT_DOUBLE_EQ(density_accuracy(std::vector<double>{0, 1, 1, 0}, Pattern{-1, 1, 1, -1}), 1.0);
  EXPECT_NEAR(density_accuracy(std::vector<double>{0.011, 0.94, 0.94, 0.065}, Pattern{-1, 1, 1, -1}),
              0.951, 5e-4);
}

TEST(Mode, ParseAndPrint) {
  EXPECT_EQ(parse_ancilla_mode("fresh"), AncillaMode::FreshAncilla);
  EXPECT_EQ(parse_ancilla_mode("reset"), AncillaMode::ResetReuse);
  EXPECT_THROW(parse_ancilla_mode("borrow"), ContractError);
  EXPECT_EQ(to_string(AncillaMode::ResetReuse), "reset");
}

}  // namespace
}  // namespace qham::memory
