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

#include "qham/memory.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include "qham/errors.hpp"

namespace qham::memory {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4;

void check_dims(std::size_t got, unsigned n, const char* what) {
  if (got != n) {
    throw ContractError(std::string(what) + " has length " + std::to_string(got) +
                        ", expected " + std::to_string(n));
  }
}

}  // namespace

void validate_pattern(const Pattern& pattern) {
  if (pattern.empty()) throw ContractError("pattern must have at least one entry");
  for (int e : pattern) {
    if (e != 1 && e != -1) throw ContractError("pattern entries must be +1 or -1");
  }
}

void validate_probe(std::span<const double> probe) {
  if (probe.empty()) throw ContractError("probe must have at least one entry");
  for (double x : probe) {
    if (!(x >= -1.0 && x <= 1.0)) throw ContractError("probe entries must lie in [-1, 1]");
  }
}

ProbeState to_probe(const Pattern& pattern) { return ProbeState(pattern.begin(), pattern.end()); }

WeightMatrix::WeightMatrix(unsigned n) : n_(n), w_(std::size_t{n} * n, 0.0) {
  if (n < 1) throw ContractError("weight matrix needs n >= 1");
}

WeightMatrix::WeightMatrix(unsigned n, std::vector<double> values) : n_(n), w_(std::move(values)) {
  if (n < 1) throw ContractError("weight matrix needs n >= 1");
  check_dims(w_.size(), n * n, "weight matrix data");
  for (unsigned i = 0; i < n; ++i) {
    if (w_[i * n + i] != 0.0) throw ContractError("weight matrix diagonal must be zero");
    for (unsigned j = 0; j < n; ++j) {
      const double a = w_[i * n + j], b = w_[j * n + i];
      if (!std::isfinite(a)) throw ContractError("weight matrix has a non-finite entry");
      if (std::abs(a - b) > 1e-12) throw ContractError("weight matrix must be symmetric");
    }
  }
}

void WeightMatrix::set(unsigned i, unsigned j, double value) {
  if (i >= n_ || j >= n_) throw ContractError("weight index out of range");
  if (i == j && value != 0.0) throw ContractError("weight matrix diagonal must be zero");
  w_[i * n_ + j] = value;
  w_[j * n_ + i] = value;
}

double WeightMatrix::w_max() const {
  double best = 0.0;
  for (unsigned i = 0; i < n_; ++i) {
    for (unsigned j = 0; j < n_; ++j) {
      if (i != j) best = std::max(best, std::abs(w_[i * n_ + j]));
    }
  }
  return best;
}

WeightMatrix hebbian(std::span<const Pattern> patterns) {
  if (patterns.empty()) throw ContractError("hebbian training needs at least one pattern");
  const auto n = static_cast<unsigned>(patterns.front().size());
  for (const auto& p : patterns) {
    validate_pattern(p);
    if (p.size() != n) throw ContractError("hebbian training needs patterns of equal length");
  }
  const double m = static_cast<double>(patterns.size());
  WeightMatrix w(n);
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = i + 1; j < n; ++j) {
      int sum = 0;
      for (const auto& p : patterns) sum += p[i] * p[j];
      w.set(i, j, sum / m);
    }
  }
  return w;
}

void append_encoding(Circuit& circuit, std::span<const double> probe) {
  validate_probe(probe);
  if (probe.size() > circuit.qubit_count()) throw ContractError("probe wider than the circuit");
  for (Qubit i = 0; i < probe.size(); ++i) {
    circuit.add(gates::Ry{i, 2 * (probe[i] * kQuarterPi + kQuarterPi)});
  }
}

Circuit encode(std::span<const double> probe) {
  validate_probe(probe);
  Circuit c(static_cast<unsigned>(probe.size()));
  append_encoding(c, probe);
  return c;
}

int classical_update(std::span<const double> x, const WeightMatrix& w, unsigned i, double h) {
  check_dims(x.size(), w.size(), "state");
  if (i >= w.size()) throw ContractError("update index out of range");
  double theta = 0.0;
  for (unsigned j = 0; j < w.size(); ++j) theta += w(i, j) * x[j];
  return theta > h ? 1 : -1;
}

double energy(std::span<const double> x, const WeightMatrix& w, std::span<const double> h) {
  check_dims(x.size(), w.size(), "state");
  if (!h.empty()) check_dims(h.size(), w.size(), "threshold vector");
  double e = 0.0;
  for (unsigned i = 0; i < w.size(); ++i) {
    for (unsigned j = 0; j < w.size(); ++j) e -= 0.5 * w(i, j) * x[i] * x[j];
    if (!h.empty()) e += h[i] * x[i];
  }
  return e;
}

std::string to_string(AncillaMode mode) {
  return mode == AncillaMode::FreshAncilla ? "fresh" : "reset";
}

AncillaMode parse_ancilla_mode(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "fresh" || lower == "freshancilla") return AncillaMode::FreshAncilla;
  if (lower == "reset" || lower == "resetreuse") return AncillaMode::ResetReuse;
  throw ContractError("unknown ancilla mode '" + std::string(text) + "' (fresh|reset)");
}

void UpdateSchedule::validate(unsigned n) const {
  for (Qubit t : targets) {
    if (t >= n) {
      throw ContractError("schedule target " + std::to_string(t) + " outside the " +
                          std::to_string(n) + " data qubits");
    }
  }
}

UpdateSchedule UpdateSchedule::random(unsigned n, unsigned u, Rng& rng, AncillaMode mode) {
  if (n < 1) throw ContractError("random schedule needs n >= 1");
  UpdateSchedule s;
  s.mode = mode;
  s.targets.reserve(u);
  for (unsigned k = 0; k < u; ++k) s.targets.push_back(static_cast<Qubit>(rng.below(n)));
  return s;
}

unsigned qubit_overhead(unsigned n, unsigned u, AncillaMode mode, neuron::ActivationKind kind) {
  if (n < 1) throw ContractError("qubit_overhead needs n >= 1");
  const unsigned per_update = kind == neuron::ActivationKind::RUS ? 2 : 1;
  return mode == AncillaMode::ResetReuse ? n + per_update : n + per_update * u;
}

RecallCircuit build_recall_circuit(std::span<const double> probe, const WeightMatrix& w,
                                   const UpdateSchedule& schedule,
                                   const RecallBuildOptions& options) {
  validate_probe(probe);
  const unsigned n = w.size();
  check_dims(probe.size(), n, "probe");
  schedule.validate(n);
  const bool rus = options.kind == neuron::ActivationKind::RUS;
  const auto u = static_cast<unsigned>(schedule.targets.size());
  const unsigned width = std::max(n, qubit_overhead(n, u, schedule.mode, options.kind));

  RecallCircuit out{Circuit(width, options.measure ? n : 0), n, {}, false, {}};
  Circuit& c = out.circuit;
  if (options.encode) append_encoding(c, probe);
  const double g = u == 0 ? 0.0 : options.gamma ? *options.gamma : neuron::gamma(w.w_max(), n);
  const bool reuse = schedule.mode == AncillaMode::ResetReuse;
  out.after_update.push_back(c.size());
  for (unsigned k = 0; k < u; ++k) {
    const Qubit target = schedule.targets[k];
    const unsigned slot = reuse ? 0 : k;
    const Qubit ancilla = n + (rus ? 2 * slot : slot);
    std::optional<Qubit> input;
    if (rus) input = ancilla + 1;
    if (reuse && k > 0) {
      c.add(gates::Reset{ancilla});
      if (input) c.add(gates::Reset{*input});
      out.mid_circuit_measurement = true;
    }
    const auto plan = neuron::NeuronPlan::for_row(target, w.row(target), g, ancilla, input);
    if (rus) {
      out.rus.push_back(neuron::append_rus_neuron(c, plan, options.max_attempts));
      out.mid_circuit_measurement = true;
    } else {
      neuron::append_simplified_neuron(c, plan);
    }
    out.after_update.push_back(c.size());
  }
  if (options.measure) {
    for (Qubit q = 0; q < n; ++q) c.add(gates::Measure{q, q});
  }
  return out;
}

RecallResult run_recall(std::span<const double> probe, const WeightMatrix& w,
                        const UpdateSchedule& schedule, const RecallOptions& options) {
  const unsigned n = w.size();
  const auto u = static_cast<unsigned>(schedule.targets.size());
  const unsigned width = std::max(n, qubit_overhead(n, u, schedule.mode, options.kind));
  if (width > options.max_qubits) {
    throw SizeError("recall needs " + std::to_string(width) + " qubits, cap is " +
                    std::to_string(options.max_qubits));
  }
  if (options.shots < 1) throw ContractError("recall needs shots >= 1");
  RecallBuildOptions build{options.kind, options.max_attempts, true, true, options.gamma};
  const RecallCircuit rc = build_recall_circuit(probe, w, schedule, build);

  RecallResult result;
  result.shots = options.shots;
  result.qubits = rc.circuit.qubit_count();
  std::vector<std::uint64_t> ones(n, 0);
  std::uint64_t failures = 0;
  Rng rng(options.seed);
  execute(rc.circuit, init_state(rc.circuit.qubit_count(), options.max_qubits), options.shots, rng,
          options.noise, [&](const Leaf& leaf) {
            bool failed = false;
            unsigned attempts_failed = 0;
            for (const auto& rec : rc.rus) {
              if (neuron::rus_failed(leaf.bits, rec)) failed = true;
              for (unsigned k = 0; k < rec.attempts; ++k) attempts_failed += leaf.bits[rec.first + k];
            }
            if (failed) {
              result.failed_shots += leaf.shots;
              return;
            }
            failures += attempts_failed * leaf.shots;
            const auto data = leaf.bits.first(n);
            result.counts[to_bitstring(data)] += leaf.shots;
            for (unsigned q = 0; q < n; ++q) ones[q] += data[q] * leaf.shots;
          });

  const std::uint64_t good = result.shots - result.failed_shots;
  result.majority_vote = majority_vote(ones, good);
  if (good > 0 && u > 0) result.mean_failures = static_cast<double>(failures) / (good * u);
  if (options.noise == nullptr && !rc.mid_circuit_measurement) {
    RecallBuildOptions exact = build;
    exact.measure = false;
    const StateVector state =
        simulate_unitary(build_recall_circuit(probe, w, schedule, exact).circuit,
                         options.max_qubits);
    for (Qubit q = 0; q < n; ++q) result.per_qubit_p1.push_back(state.prob_one(q));
    result.exact_marginals = true;
  } else {
    for (unsigned q = 0; q < n; ++q) {
      result.per_qubit_p1.push_back(good > 0 ? static_cast<double>(ones[q]) / good : 0.0);
    }
  }
  return result;
}

std::vector<std::uint8_t> majority_vote(std::span<const std::uint64_t> ones, std::uint64_t shots) {
  std::vector<std::uint8_t> bits(ones.size(), 0);
  for (std::size_t i = 0; i < ones.size(); ++i) bits[i] = 2 * ones[i] > shots ? 1 : 0;
  return bits;
}

std::vector<std::uint8_t> majority_vote(const Counts& counts, std::uint64_t shots) {
  std::vector<std::uint64_t> ones;
  for (const auto& [key, count] : counts) {
    if (ones.empty()) ones.assign(key.size(), 0);
    if (key.size() != ones.size()) throw ContractError("histogram keys differ in length");
    for (std::size_t i = 0; i < key.size(); ++i) {
      if (key[i] == '1') ones[i] += count;
    }
  }
  return majority_vote(ones, shots);
}

double density_accuracy(std::span<const double> per_qubit_p1, const Pattern& target) {
  validate_pattern(target);
  check_dims(per_qubit_p1.size(), static_cast<unsigned>(target.size()), "marginal list");
  double sum = 0.0;
  for (std::size_t i = 0; i < target.size(); ++i) {
    sum += target[i] == 1 ? per_qubit_p1[i] : 1.0 - per_qubit_p1[i];
  }
  return sum / static_cast<double>(target.size());
}

std::vector<std::uint8_t> to_bits(const Pattern& pattern) {
  std::vector<std::uint8_t> bits;
  for (int e : pattern) bits.push_back(e == 1 ? 1 : 0);
  return bits;
}

}  // namespace qham::memory
