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

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qham/circuit.hpp"
#include "qham/rng.hpp"

namespace qham::noise {

/// Device-average calibration figures. Rates are probabilities, not percent.
struct DeviceNoiseParams {
  std::string name;
  unsigned qubits = 0;
  std::string processor;
  double t1_us = 0.0;
  double t2_us = 0.0;
  double readout_err = 0.0;
  double sx_err = 0.0;
  std::optional<double> cnot_err;  // absent on single-qubit devices
  unsigned quantum_volume = 0;

  /// Probabilities in [0, 1], T1, T2 > 0 and T2 <= 2 T1.
  void validate() const;
};

/// The eight IBMQ device profiles used for the noisy recall and capacity runs.
const std::vector<DeviceNoiseParams>& device_registry();

/// Looks up a device in `registry` (defaults to the built-in table).
/// Throws NotFoundError.
const DeviceNoiseParams& find_device(std::string_view name);
const DeviceNoiseParams& find_device(std::string_view name,
                                     const std::vector<DeviceNoiseParams>& registry);

/// Reads a JSON array of device records using the same field names the
/// built-in registry serializes to.
std::vector<DeviceNoiseParams> load_devices(const std::filesystem::path& path);

/// Non-calibrated defaults; the device tables carry no gate times.
struct GateDurations {
  double single_qubit_ns = 71.0;
  double cnot_ns = 300.0;
  double readout_ns = 1000.0;
};

struct ChannelFlags {
  bool depolarizing = true;
  bool thermal = true;
  bool readout = true;
};

struct NoiseSpec {
  DeviceNoiseParams device;
  GateDurations durations;
  ChannelFlags channels;

  void validate() const;
  /// Spec for a named registry device with default durations, all channels on.
  static NoiseSpec for_device(std::string_view name);
};

enum class EventKind {
  Depolarizing,      // with prob p a uniformly random non-identity Pauli on the qubits
  AmplitudeDamping,  // T1 decay with parameter p
  PhaseDamping,      // pure dephasing with parameter p
};

struct ErrorEvent {
  EventKind kind;
  double probability;
  std::array<Qubit, 2> qubits;
  unsigned arity;  // 1 or 2 (2 only for Depolarizing)
};

/// 1 - exp(-t / T1).
double amplitude_damping_prob(double duration_ns, double t1_us);
/// 1 - exp(-t / T_phi) with 1/T_phi = 1/T2 - 1/(2 T1).
double phase_damping_prob(double duration_ns, double t1_us, double t2_us);

/// Error events attached to a single gate treated as one hardware operation:
/// a depolarizing event (sx_err for one qubit, cnot_err over both qubits of
/// a two-qubit gate) followed by thermal relaxation on each participating
/// qubit over the gate's duration. Throws NoiseModelError when a two-qubit
/// gate meets a device without a CNOT rate.
std::vector<ErrorEvent> channels_for_gate(const Gate& gate, const NoiseSpec& spec);

/// Events for a logical gate, derived from its basis decomposition: the
/// per-basis-gate events are composed per qubit (depolarizing with
/// depolarizing, damping with damping) and applied after the ideal gate.
/// For basis gates this equals channels_for_gate.
std::vector<ErrorEvent> equivalent_channels(const Gate& gate, const NoiseSpec& spec);

/// Thermal relaxation over the readout window, applied before a measurement.
std::vector<ErrorEvent> channels_for_measure(Qubit q, const NoiseSpec& spec);

/// Flips `bit` with probability p.
bool apply_readout_error(bool bit, double p, Rng& rng);

}  // namespace qham::noise
