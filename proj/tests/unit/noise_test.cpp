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
#include <filesystem>

#include <gtest/gtest.h>

#include "qham/errors.hpp"
#include "qham/memory.hpp"
#include "qham/noise.hpp"
#include "qham/simulator.hpp"

namespace qham::noise {
namespace {

TEST(Registry, MelbourneParameters) {
  const auto& d = find_device("ibmq_16_melbourne");
  EXPECT_EQ(d.qubits, 15u);
  EXPECT_DOUBLE_EQ(d.t1_us, 55.60);
  EXPECT_DOUBLE_EQ(d.t2_us, 56.15);
  EXPECT_DOUBLE_EQ(d.readout_err, 0.0689);
  EXPECT_DOUBLE_EQ(d.sx_err, 0.00125);
  EXPECT_DOUBLE_EQ(*d.cnot_err, 0.0305);
}

TEST(Registry, EveryDeviceValidates) {
  for (const auto& d : device_registry()) EXPECT_NO_THROW(d.validate()) << d.name;
  EXPECT_FALSE(find_device("ibmq_armonk").cnot_err.has_value());
  EXPECT_EQ(find_device("ibmq_5_yorktown").name, "ibmqx2");
  EXPECT_THROW(find_device("ibmq_nowhere"), NotFoundError);
}

TEST(Registry, FileMatchesBuiltin) {
  const auto loaded = load_devices(std::filesystem::path(QHAM_SOURCE_DIR) / "data/devices.json");
  ASSERT_EQ(loaded.size(), device_registry().size());
  for (std::size_t i = 0; i < loaded.size(); ++i) {
    EXPECT_EQ(loaded[i].name, device_registry()[i].name);
    EXPECT_DOUBLE_EQ(loaded[i].t1_us, device_registry()[i].t1_us);
    EXPECT_EQ(loaded[i].cnot_err, device_registry()[i].cnot_err);
  }
}

TEST(Validate, RejectsInconsistentParameters) {
  DeviceNoiseParams d = find_device("ibmq_lima");
  d.t2_us = 3 * d.t1_us;
  EXPECT_THROW(d.validate(), ContractError);
  d = find_device("ibmq_lima");
  d.readout_err = 1.5;
  EXPECT_THROW(d.validate(), ContractError);
}

TEST(Damping, MelbourneSingleQubitAmplitudeProbability) {
  EXPECT_NEAR(amplitude_damping_prob(71.0, 55.60), 0.0012761634272722, 1e-15);
  EXPECT_NEAR(amplitude_damping_prob(71.0, 55.60), 1.277e-3, 1e-6);
}

TEST(Damping, ProbabilitiesAreMonotoneAndBounded) {
  double last = 0.0;
  for (double t = 10; t < 1e6; t *= 3) {
    const double p = amplitude_damping_prob(t, 50.0);
    EXPECT_GE(p, last);
    EXPECT_LE(p, 1.0);
    last = p;
  }
  // T2 = 2 T1 leaves no pure dephasing.
  EXPECT_DOUBLE_EQ(phase_damping_prob(100.0, 50.0, 100.0), 0.0);
  EXPECT_GT(phase_damping_prob(100.0, 50.0, 40.0), 0.0);
}

TEST(Channels, GateEventsCarryDeviceErrors) {
  const auto spec = NoiseSpec::for_device("ibmq_16_melbourne");
  double depol = 0.0;
  for (const auto& e : channels_for_gate(gates::CNOT{0, 1}, spec)) {
    if (e.kind == EventKind::Depolarizing) {
      EXPECT_EQ(e.arity, 2u);
      depol = e.probability;
    }
  }
  EXPECT_GT(depol, 0.0);
  EXPECT_THROW(channels_for_gate(gates::CNOT{0, 1}, NoiseSpec::for_device("ibmq_armonk")),
               NoiseModelError);
}

TEST(Channels, DisabledChannelsProduceNothing) {
  auto spec = NoiseSpec::for_device("ibmq_lima");
  spec.channels = {false, false, false};
  EXPECT_TRUE(channels_for_gate(gates::SX{0}, spec).empty());
  EXPECT_TRUE(channels_for_gate(gates::CNOT{0, 1}, spec).empty());
}

TEST(Readout, FlipsWithGivenProbability) {
  Rng rng(3);
  int flips = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) flips += apply_readout_error(false, 0.1, rng) ? 1 : 0;
  EXPECT_NEAR(flips / double(n), 0.1, 4 * std::sqrt(0.09 / n));
  EXPECT_FALSE(apply_readout_error(false, 0.0, rng));
}

double corrupted_recall_accuracy(const NoiseSpec* spec) {
  const std::vector<memory::Pattern> attractors = {{-1, 1, 1, -1}, {1, -1, -1, 1}};
  const auto w = memory::hebbian(attractors);
  memory::UpdateSchedule s;
  s.targets = {2};
  memory::RecallOptions o;
  o.shots = 20000;
  o.seed = 17;
  o.noise = spec;
  const auto r = memory::run_recall(std::vector<double>{-1, 1, 0, -1}, w, s, o);
  std::vector<double> p1(4);
  for (const auto& [key, n] : r.counts) {
    for (int q = 0; q < 4; ++q) p1[q] += (key[q] == '1') * double(n) / r.shots;
  }
  return memory::density_accuracy(p1, attractors[0]);
}

// Noisier devices recall worse.
TEST(Ordering, MelbourneBelowLimaBelowNoiseless) {
  const auto melbourne = NoiseSpec::for_device("ibmq_16_melbourne");
  const auto lima = NoiseSpec::for_device("ibmq_lima");
  const double a_mel = corrupted_recall_accuracy(&melbourne);
  const double a_lima = corrupted_recall_accuracy(&lima);
  const double a_clean = corrupted_recall_accuracy(nullptr);
  EXPECT_LT(a_mel, a_lima);
  EXPECT_LT(a_lima, a_clean);
  EXPECT_LT(a_lima, 1.0);
}

}  // namespace
}  // namespace qham::noise
