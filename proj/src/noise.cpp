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

#include "qham/noise.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <utility>

#include "json.hpp"
#include "qham/errors.hpp"
#include "qham/transpile.hpp"

namespace qham::noise {

namespace {

double clamp01(double p) { return std::clamp(p, 0.0, 1.0); }

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

void DeviceNoiseParams::validate() const {
  auto fail = [&](const std::string& what) {
    throw ContractError("device '" + name + "': " + what);
  };
  if (!(t1_us > 0.0)) fail("t1_us must be positive");
  if (!(t2_us > 0.0)) fail("t2_us must be positive");
  if (t2_us > 2.0 * t1_us) fail("t2_us exceeds 2 * t1_us");
  if (!is_probability(readout_err)) fail("readout_err outside [0, 1]");
  if (!is_probability(sx_err)) fail("sx_err outside [0, 1]");
  if (cnot_err && !is_probability(*cnot_err)) fail("cnot_err outside [0, 1]");
}

const std::vector<DeviceNoiseParams>& device_registry() {
  // Device averages as published for the 2021 IBMQ backends; percentages
  // converted to probabilities.
  static const std::vector<DeviceNoiseParams> registry = {
      {"ibmq_16_melbourne", 15, "Canary", 55.60, 56.15, 0.0689, 0.00125, 0.0305, 8},
      {"ibmqx2", 5, "Canary", 59.30, 36.05, 0.0458, 0.00099, 0.0175, 8},
      {"ibmq_athens", 5, "Falcon", 74.08, 91.22, 0.0202, 0.00045, 0.0121, 32},
      {"ibmq_santiago", 5, "Falcon", 121.58, 101.01, 0.0436, 0.00024, 0.0074, 32},
      {"ibmq_lima", 5, "Falcon", 79.79, 85.86, 0.0260, 0.00034, 0.0097, 8},
      {"ibmq_quito", 5, "Falcon", 81.83, 80.41, 0.0292, 0.00054, 0.0121, 16},
      {"ibmq_belem", 5, "Falcon", 75.62, 100.24, 0.0256, 0.00026, 0.0119, 16},
      {"ibmq_armonk", 1, "Canary", 138.19, 222.74, 0.0260, 0.00019, std::nullopt, 1},
  };
  return registry;
}

const DeviceNoiseParams& find_device(std::string_view name,
                                     const std::vector<DeviceNoiseParams>& registry) {
  for (const auto& d : registry) {
    if (d.name == name) return d;
  }
  // ibmqx2 is also listed under its later name
  if (name == "ibmq_5_yorktown") return find_device("ibmqx2", registry);
  throw NotFoundError("unknown device '" + std::string(name) + "'");
}

const DeviceNoiseParams& find_device(std::string_view name) {
  return find_device(name, device_registry());
}

std::vector<DeviceNoiseParams> load_devices(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), "cannot open device registry");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string(), e.what());
  }
  const nlohmann::json* list = &doc;
  if (doc.is_object() && doc.contains("devices")) list = &doc["devices"];
  if (!list->is_array()) throw ConfigError("/devices", "expected an array of device records");

  std::vector<DeviceNoiseParams> out;
  for (std::size_t i = 0; i < list->size(); ++i) {
    const auto& rec = (*list)[i];
    const std::string base = "/devices/" + std::to_string(i);
    auto number = [&](const char* key) {
      if (!rec.contains(key) || !rec[key].is_number()) {
        throw ConfigError(base + "/" + key, "expected a number");
      }
      return rec[key].get<double>();
    };
    if (!rec.is_object() || !rec.contains("name") || !rec["name"].is_string()) {
      throw ConfigError(base + "/name", "expected a string");
    }
    DeviceNoiseParams d;
    d.name = rec["name"].get<std::string>();
    d.qubits = rec.value("qubits", 0U);
    d.processor = rec.value("processor", std::string{});
    d.t1_us = number("t1_us");
    d.t2_us = number("t2_us");
    d.readout_err = number("readout_err");
    d.sx_err = number("sx_err");
    if (rec.contains("cnot_err") && !rec["cnot_err"].is_null()) d.cnot_err = number("cnot_err");
    d.quantum_volume = rec.value("quantum_volume", 0U);
    try {
      d.validate();
    } catch (const ContractError& e) {
      throw ConfigError(base, e.what());
    }
    out.push_back(std::move(d));
  }
  return out;
}

void NoiseSpec::validate() const {
  device.validate();
  if (!(durations.single_qubit_ns > 0.0) || !(durations.cnot_ns > 0.0) ||
      !(durations.readout_ns > 0.0)) {
    throw ContractError("gate durations must be positive");
  }
}

NoiseSpec NoiseSpec::for_device(std::string_view name) {
  NoiseSpec spec{find_device(name), GateDurations{}, ChannelFlags{}};
  spec.validate();
  return spec;
}

double amplitude_damping_prob(double duration_ns, double t1_us) {
  return clamp01(-std::expm1(-(duration_ns * 1e-3) / t1_us));
}

double phase_damping_prob(double duration_ns, double t1_us, double t2_us) {
  const double rate = 1.0 / t2_us - 1.0 / (2.0 * t1_us);  // 1/T_phi in 1/us
  if (rate <= 0.0) return 0.0;
  return clamp01(-std::expm1(-(duration_ns * 1e-3) * rate));
}

namespace {

void append_thermal(std::vector<ErrorEvent>& out, Qubit q, double duration_ns,
                    const NoiseSpec& spec) {
  if (!spec.channels.thermal) return;
  const double p_amp = amplitude_damping_prob(duration_ns, spec.device.t1_us);
  const double p_phase = phase_damping_prob(duration_ns, spec.device.t1_us, spec.device.t2_us);
  out.push_back({EventKind::AmplitudeDamping, p_amp, {q, q}, 1});
  out.push_back({EventKind::PhaseDamping, p_phase, {q, q}, 1});
}

}  // namespace

std::vector<ErrorEvent> channels_for_gate(const Gate& gate, const NoiseSpec& spec) {
  if (!is_unitary(gate)) throw ContractError("channels_for_gate: " + gate_name(gate) + " is not a gate");
  const auto qubits = gate_qubits(gate);
  std::vector<ErrorEvent> out;
  if (qubits.size() == 2) {
    if (!spec.device.cnot_err) {
      throw NoiseModelError("device '" + spec.device.name + "' has no two-qubit error rate");
    }
    if (spec.channels.depolarizing) {
      out.push_back({EventKind::Depolarizing, clamp01(*spec.device.cnot_err),
                     {qubits[0], qubits[1]}, 2});
    }
    for (Qubit q : qubits) append_thermal(out, q, spec.durations.cnot_ns, spec);
  } else {
    if (spec.channels.depolarizing) {
      out.push_back({EventKind::Depolarizing, clamp01(spec.device.sx_err),
                     {qubits[0], qubits[0]}, 1});
    }
    append_thermal(out, qubits[0], spec.durations.single_qubit_ns, spec);
  }
  return out;
}

std::vector<ErrorEvent> equivalent_channels(const Gate& gate, const NoiseSpec& spec) {
  if (is_basis_gate(gate)) return channels_for_gate(gate, spec);

  // survival factors of each composed channel; a product of channels of the
  // same family is again in that family
  std::map<Qubit, double> depol1;                     // 1 - 4p/3
  std::map<std::pair<Qubit, Qubit>, double> depol2;   // 1 - 16p/15
  std::map<Qubit, double> amp, phase;                 // 1 - p
  for (const auto& basis : transpile::decompose_gate(gate)) {
    for (const auto& e : channels_for_gate(basis, spec)) {
      switch (e.kind) {
        case EventKind::Depolarizing:
          if (e.arity == 1) {
            auto [it, _] = depol1.try_emplace(e.qubits[0], 1.0);
            it->second *= 1.0 - 4.0 * e.probability / 3.0;
          } else {
            auto [it, _] = depol2.try_emplace({e.qubits[0], e.qubits[1]}, 1.0);
            it->second *= 1.0 - 16.0 * e.probability / 15.0;
          }
          break;
        case EventKind::AmplitudeDamping: {
          auto [it, _] = amp.try_emplace(e.qubits[0], 1.0);
          it->second *= 1.0 - e.probability;
          break;
        }
        case EventKind::PhaseDamping: {
          auto [it, _] = phase.try_emplace(e.qubits[0], 1.0);
          it->second *= 1.0 - e.probability;
          break;
        }
      }
    }
  }
  std::vector<ErrorEvent> out;
  for (const auto& [pair, f] : depol2) {
    out.push_back({EventKind::Depolarizing, clamp01(15.0 * (1.0 - f) / 16.0),
                   {pair.first, pair.second}, 2});
  }
  for (const auto& [q, f] : depol1) {
    out.push_back({EventKind::Depolarizing, clamp01(3.0 * (1.0 - f) / 4.0), {q, q}, 1});
  }
  for (Qubit q : gate_qubits(gate)) {
    if (auto it = amp.find(q); it != amp.end()) {
      out.push_back({EventKind::AmplitudeDamping, clamp01(1.0 - it->second), {q, q}, 1});
    }
    if (auto it = phase.find(q); it != phase.end()) {
      out.push_back({EventKind::PhaseDamping, clamp01(1.0 - it->second), {q, q}, 1});
    }
  }
  return out;
}

std::vector<ErrorEvent> channels_for_measure(Qubit q, const NoiseSpec& spec) {
  std::vector<ErrorEvent> out;
  append_thermal(out, q, spec.durations.readout_ns, spec);
  return out;
}

bool apply_readout_error(bool bit, double p, Rng& rng) {
  if (!is_probability(p)) throw DomainError("readout error probability outside [0, 1]");
  if (p == 0.0) return bit;
  return rng.bernoulli(p) ? !bit : bit;
}

}  // namespace qham::noise
